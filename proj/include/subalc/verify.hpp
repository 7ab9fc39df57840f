#pragma once

// Verification sweeps: each compares the tableau or a construction against
// an independent ground truth and reports agreement counts.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subalc/classify.hpp"
#include "subalc/generate.hpp"
#include "subalc/qbf.hpp"
#include "subalc/reductions.hpp"
#include "subalc/semantics.hpp"
#include "subalc/tableau.hpp"

namespace subalc {

struct SuiteOptions {
  int vars = 2;
  int clauses = 2;
  std::size_t count = 0;  // 0 picks the suite default
  std::uint64_t budget = kDefaultTableauBudget;
  std::uint64_t seed = 20240601;
  std::size_t oracle_size = 3;
};

struct SuiteResult {
  explicit SuiteResult(std::string name) : suite(std::move(name)) {}

  std::string suite;
  std::size_t instances = 0;
  std::size_t agreements = 0;
  std::optional<std::string> counterexample;
  std::vector<std::string> details;

  bool passed() const { return instances == agreements; }
  std::string summary() const {
    return std::to_string(instances) + " instances, " + std::to_string(agreements) + " agreements";
  }

  void record(bool ok, const std::function<std::string()>& describe) {
    ++instances;
    if (ok) {
      ++agreements;
    } else if (!counterexample) {
      counterexample = describe();
    }
  }
};

namespace detail {

inline std::size_t or_default(std::size_t v, std::size_t d) { return v == 0 ? d : v; }

inline bool all_assignments_satisfy(const std::vector<Clause3>& clauses, int n) {
  for (std::uint32_t a = 0; a < (1u << n); ++a) {
    for (const auto& c : clauses) {
      bool sat = false;
      for (int lit : c) sat = sat || (((a >> (std::abs(lit) - 1)) & 1u) == (lit > 0 ? 1u : 0u));
      if (!sat) return false;
    }
  }
  return true;
}

inline BoolFun and_not_second() { return BoolFun::from_string("andn", 2, "0010"); }

}  // namespace detail

// decide(qbf_to_tbox(phi)) against brute-force evaluation, over the first
// `count` (default 300) formulas of enumerate_qbfs(vars, clauses).
inline SuiteResult verify_qbf(const SuiteOptions& o) {
  SuiteResult r{"qbf"};
  const auto family = enumerate_qbfs(o.vars, o.clauses);
  const std::size_t limit = std::min(family.size(), detail::or_default(o.count, 300));
  for (std::size_t i = 0; i < limit; ++i) {
    const auto& phi = family[i];
    const bool truth = eval_qbf(phi);
    const bool sat = decide(qbf_to_tbox(phi).instance, o.budget).satisfiable;
    r.record(sat == truth, [&] {
      return to_string(phi) + ": formula " + (truth ? "true" : "false") + ", tableau " + (sat ? "SAT" : "UNSAT");
    });
  }
  return r;
}

// decide(taut_to_tcsat(clauses, n)) against "every assignment satisfies
// every clause", for all clause multisets with n <= vars, size <= clauses.
inline SuiteResult verify_taut(const SuiteOptions& o) {
  SuiteResult r{"taut"};
  for (int n = 1; n <= o.vars; ++n) {
    const auto family = enumerate_qbfs(n, o.clauses);
    // One formula per clause set: the all-universal prefix comes last.
    for (std::size_t i = (std::size_t{1} << n) - 1; i < family.size(); i += std::size_t{1} << n) {
      const auto& clauses = family[i].clauses;
      const bool valid = detail::all_assignments_satisfy(clauses, n);
      const bool sat = decide(taut_to_tcsat(clauses, n).instance, o.budget).satisfiable;
      r.record(sat == valid, [&] {
        return to_string(family[i]) + ": valid " + (valid ? "yes" : "no") + ", tableau " + (sat ? "SAT" : "UNSAT");
      });
    }
  }
  return r;
}

// Each reduction on `count` (default 200) random instances: verdicts match.
inline SuiteResult verify_interreductions(const SuiteOptions& o) {
  using K = ProblemKind;
  SuiteResult r{"interreductions"};
  const std::size_t count = detail::or_default(o.count, 200);
  const OperatorSet full{fns::conj(), fns::disj(), fns::neg(), fns::top(), fns::bot()};
  const OperatorSet no_top{fns::conj(), fns::disj(), fns::neg(), fns::bot()};
  auto same_verdict = [&](const std::string& label, const ProblemInstance& src, const Reduction& red,
                          std::size_t& agree) {
    const bool a = decide(src, o.budget).satisfiable;
    const bool b = decide(red.instance, o.budget).satisfiable;
    if (a == b) ++agree;
    r.record(a == b, [&] {
      return label + ": source " + (a ? "SAT" : "UNSAT") + ", target " + (b ? "SAT" : "UNSAT") + "\n" +
             print_instance(src);
    });
  };
  auto run = [&](const std::string& label, const OperatorSet& ops, std::uint64_t salt,
                 const std::function<void(InstanceGenerator&, std::size_t, std::size_t&)>& step) {
    InstanceGenerator gen(ops, o.seed + salt);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < count; ++i) step(gen, i, agree);
    r.details.push_back(label + ": " + std::to_string(count) + " instances, " + std::to_string(agree) + " agreements");
  };

  const std::pair<K, K> pairs[] = {
      {K::CSAT, K::OSAT}, {K::TSAT, K::TCSAT}, {K::TCSAT, K::OSAT}, {K::OSAT, K::OCSAT}, {K::OCSAT, K::OSAT}};
  std::uint64_t salt = 0;
  for (const auto& [from, to] : pairs) {
    const std::string label = "embed " + to_string(from) + " -> " + to_string(to);
    run(label, full, ++salt, [&](InstanceGenerator& gen, std::size_t, std::size_t& agree) {
      const auto src = gen.instance(from);
      same_verdict(label, src, embed(src, to), agree);
    });
  }
  run("tcsat -> tsat with top", no_top, ++salt, [&](InstanceGenerator& gen, std::size_t, std::size_t& agree) {
    const auto src = gen.instance(K::TCSAT);
    same_verdict("tcsat -> tsat with top", src, tcsat_to_tsat_top(src), agree);
  });
  const K theory[] = {K::TSAT, K::TCSAT, K::OSAT, K::OCSAT};
  run("constants via negation", full, ++salt, [&](InstanceGenerator& gen, std::size_t i, std::size_t& agree) {
    const auto src = gen.instance(theory[i % 4]);
    same_verdict("constants via negation", src, eliminate_constants_via_neg(src), agree);
  });
  run("negation gadget", full, ++salt, [&](InstanceGenerator& gen, std::size_t i, std::size_t& agree) {
    const auto src = gen.instance(i % 2 ? K::OSAT : K::TSAT);
    const auto red = add_negation_gadget(src, "A");
    const bool a = decide(src, o.budget).satisfiable;
    const auto v = decide(red.instance, o.budget);
    bool ok = a == v.satisfiable;
    if (ok && v.witness) {
      const auto& I = *v.witness;
      const std::string comp = red.report.fresh_symbols.at(1);
      for (std::size_t x = 0; x < I.domain_size; ++x) {
        const bool in_a = I.concepts.count("A") && I.concepts.at("A").count(x);
        const bool in_c = I.concepts.count(comp) && I.concepts.at(comp).count(x);
        ok = ok && in_a != in_c;
      }
    }
    if (ok) ++agree;
    r.record(ok, [&] { return "negation gadget: verdict or complement mismatch\n" + print_instance(src); });
  });
  return r;
}

// trivial_model_r1 on OCSAT instances over true-reproducing operators and
// trivial_model_r0 on TSAT instances over false-reproducing ones.
inline SuiteResult verify_trivial_models(const SuiteOptions& o) {
  SuiteResult r{"trivial-models"};
  const std::size_t count = detail::or_default(o.count, 500);
  const std::vector<BoolFun> r1_pool{fns::conj(), fns::disj(), fns::top(), fns::implies(),
                                     fns::xnor(), fns::id(),   fns::s11()};
  const std::vector<BoolFun> r0_pool{fns::conj(), fns::disj(), fns::xor_(), fns::bot(), detail::and_not_second(),
                                     fns::s11()};
  std::mt19937_64 rng(o.seed);
  auto subset = [&](const std::vector<BoolFun>& pool) {
    OperatorSet ops;
    while (ops.empty()) {
      const auto mask = rng();
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if ((mask >> i) & 1u) ops.add(pool[i]);
      }
    }
    return ops;
  };
  for (std::size_t i = 0; i < count; ++i) {
    InstanceGenerator gen(subset(r1_pool), rng());
    const auto inst = gen.instance(ProblemKind::OCSAT);
    r.record(check_instance(trivial_model_r1(inst), inst), [&] { return "r1 model fails\n" + print_instance(inst); });
  }
  for (std::size_t i = 0; i < count; ++i) {
    InstanceGenerator gen(subset(r0_pool), rng());
    const auto inst = gen.instance(ProblemKind::TSAT);
    r.record(check_instance(trivial_model_r0(inst), inst), [&] { return "r0 model fails\n" + print_instance(inst); });
  }
  return r;
}

// change_base keeps the verdict: {and, not} to {nand}, {xor, and} to {and, not, or}.
inline SuiteResult verify_rebase(const SuiteOptions& o) {
  using K = ProblemKind;
  SuiteResult r{"rebase"};
  const std::size_t count = detail::or_default(o.count, 100);
  const K kinds[] = {K::TSAT, K::TCSAT, K::OSAT, K::OCSAT};
  struct Case {
    OperatorSet from, to;
    std::string label;
  };
  const Case cases[] = {
      {{fns::conj(), fns::neg()}, {fns::nand()}, "{and, not} -> {nand}"},
      {{fns::xor_(), fns::conj()}, {fns::conj(), fns::neg(), fns::disj()}, "{xor, and} -> {and, not, or}"},
  };
  std::uint64_t salt = 100;
  for (const auto& c : cases) {
    InstanceGenerator gen(c.from, o.seed + ++salt);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto src = gen.instance(kinds[i % 4]);
      const auto red = change_base(src, c.to);
      const bool a = decide(src, o.budget).satisfiable;
      const bool b = decide(red.instance, o.budget).satisfiable;
      const bool ok = a == b && validate_operator_usage(red.instance, c.to).empty();
      if (ok) ++agree;
      r.record(ok, [&] { return c.label + ": verdict changed\n" + print_instance(src); });
    }
    r.details.push_back(c.label + ": " + std::to_string(count) + " instances, " + std::to_string(agree) + " agreements");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Clone table

struct CloneRow {
  std::string name;
  std::vector<BoolFun> base;
  std::vector<std::string> subclones;
  std::vector<BoolFun> non_members;
};

inline std::vector<CloneRow> clone_table() {
  using namespace fns;
  return {
      {"BF", {conj(), neg()}, {"M", "S11", "D", "E", "E0", "V0", "R1", "R0", "N2", "I", "I0"}, {}},
      {"M", {conj(), disj(), bot(), top()}, {"S11", "E", "E0", "V0", "I", "I0"}, {neg(), xor_()}},
      {"S11", {s11(), bot()}, {"E0", "I0"}, {disj(), top()}},
      {"D", {d3()}, {"N2"}, {top(), bot(), conj()}},
      {"E", {conj(), bot(), top()}, {"E0", "I", "I0"}, {disj(), neg()}},
      {"E0", {conj(), bot()}, {"I0"}, {top(), neg(), disj()}},
      {"V0", {disj(), bot()}, {"I0"}, {conj(), top()}},
      {"R1", {disj(), xnor()}, {}, {bot(), neg()}},
      {"R0", {conj(), xor_()}, {"S11", "E0", "V0", "I0"}, {top(), neg()}},
      {"N2", {neg()}, {}, {top(), bot(), conj()}},
      {"I", {id(), bot(), top()}, {"I0"}, {conj(), neg(), disj()}},
      {"I0", {id(), bot()}, {}, {top(), conj()}},
  };
}

inline SuiteResult verify_clone_table(const SuiteOptions& = {}) {
  SuiteResult r{"clone-table"};
  const auto rows = clone_table();
  auto base_of = [&](const std::string& n) -> const std::vector<BoolFun>& {
    for (const auto& row : rows) {
      if (row.name == n) return row.base;
    }
    throw std::logic_error("unknown clone " + n);
  };
  for (const auto& row : rows) {
    std::size_t ok_row = 0, total_row = 0;
    for (const auto& sub : row.subclones) {
      for (const auto& g : base_of(sub)) {
        const bool ok = clone_contains(row.base, g);
        ++total_row;
        ok_row += ok;
        r.record(ok, [&] { return row.name + " should contain " + g.name + " from " + sub; });
      }
    }
    for (const auto& g : row.non_members) {
      const bool ok = !clone_contains(row.base, g);
      ++total_row;
      ok_row += ok;
      r.record(ok, [&] { return row.name + " should exclude " + g.name; });
    }
    r.details.push_back(row.name + ": " + std::to_string(ok_row) + "/" + std::to_string(total_row) + " checks");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Tableau against bounded model search on a small exhaustive family

// Depth <= 2 concepts over atoms A, B, role R and {and, or, not, top, bot, xor}.
inline std::vector<Concept> tiny_concept_pool() {
  const auto A = Concept::atom("A"), B = Concept::atom("B");
  const auto top = Concept::apply("top"), bot = Concept::apply("bot");
  return {A,
          B,
          top,
          bot,
          Concept::apply("not", {A}),
          Concept::apply("and", {A, B}),
          Concept::apply("or", {A, Concept::apply("not", {B})}),
          Concept::apply("xor", {A, B}),
          Concept::exists("R", A),
          Concept::forall("R", B),
          Concept::exists("R", Concept::apply("not", {A}))};
}

// TSAT with one or two GCIs over the pool, and TCSAT with one GCI and a
// query from the pool.
inline std::vector<ProblemInstance> tiny_family() {
  const OperatorSet ops{fns::conj(), fns::disj(), fns::neg(), fns::top(), fns::bot(), fns::xor_()};
  const auto pool = tiny_concept_pool();
  std::vector<Gci> gcis;
  for (const auto& l : pool) {
    for (const auto& rt : pool) gcis.push_back({l, rt});
  }
  std::vector<ProblemInstance> out;
  auto make = [&](ProblemKind k) {
    ProblemInstance p;
    p.kind = k;
    p.ops = ops;
    return p;
  };
  for (std::size_t i = 0; i < gcis.size(); ++i) {
    for (std::size_t j = i; j < gcis.size(); ++j) {
      auto p = make(ProblemKind::TSAT);
      p.ontology.tbox.push_back(gcis[i]);
      if (j != i) p.ontology.tbox.push_back(gcis[j]);
      out.push_back(std::move(p));
    }
  }
  for (const auto& q : pool) {
    for (const auto& g : gcis) {
      auto p = make(ProblemKind::TCSAT);
      p.ontology.tbox.push_back(g);
      p.query = q;
      out.push_back(std::move(p));
    }
  }
  return out;
}

// An UNSAT verdict must leave the oracle empty-handed; a SAT witness always
// validates (checked inside decide) and, when small, must be findable.
inline SuiteResult verify_tiny(const SuiteOptions& o) {
  SuiteResult r{"tiny"};
  const auto family = tiny_family();
  const std::size_t limit = std::min(family.size(), detail::or_default(o.count, family.size()));
  std::size_t beyond_bound = 0;  // SAT with only larger models; accepted on the validated witness
  for (std::size_t i = 0; i < limit; ++i) {
    const auto& inst = family[i];
    const auto v = decide(inst, o.budget);
    const auto model = bounded_model_search(inst, o.oracle_size, std::uint64_t{1} << 40);
    const bool beyond = v.satisfiable && !model && v.witness->domain_size > o.oracle_size;
    beyond_bound += beyond;
    bool ok = v.satisfiable ? (model.has_value() || beyond) : !model.has_value();
    r.record(ok, [&] {
      return std::string("tableau ") + (v.satisfiable ? "SAT" : "UNSAT") + ", oracle " +
             (model ? "found a model" : "found none") + "\n" + print_instance(inst);
    });
  }
  r.details.push_back(std::to_string(beyond_bound) + " SAT verdicts needed more than " +
                      std::to_string(o.oracle_size) + " elements");
  return r;
}

inline std::vector<std::string> suite_names() {
  return {"qbf", "taut", "interreductions", "trivial-models", "rebase", "clone-table", "tiny"};
}

inline SuiteResult run_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "qbf") return verify_qbf(o);
  if (name == "taut") return verify_taut(o);
  if (name == "interreductions") return verify_interreductions(o);
  if (name == "trivial-models") return verify_trivial_models(o);
  if (name == "rebase") return verify_rebase(o);
  if (name == "clone-table") return verify_clone_table(o);
  if (name == "tiny") return verify_tiny(o);
  throw PreconditionError("unknown suite '" + name + "'");
}

}  // namespace subalc
