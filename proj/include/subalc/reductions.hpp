#pragma once

// Reductions between the five problems, constant elimination, base change
// through gate atoms, and the QBF and tautology encodings into TBoxes.
// Every generated symbol starts with '_'; generated constant operators are
// named top and bot unless those names are taken.

#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subalc/boolfun.hpp"
#include "subalc/error.hpp"
#include "subalc/qbf.hpp"
#include "subalc/syntax.hpp"

namespace subalc {

struct ReductionReport {
  std::string source_kind;  // a problem name, "qbf" or "taut"
  std::string target_kind;
  std::vector<std::string> fresh_symbols;
  std::size_t axiom_count = 0;
};

struct Reduction {
  ProblemInstance instance;
  ReductionReport report;
};

namespace detail {

inline std::size_t axiom_count(const ProblemInstance& inst) {
  return inst.ontology.tbox.size() + inst.ontology.abox.size();
}

// Tracks fresh names for the report.
class FreshTracker {
 public:
  explicit FreshTracker(const ProblemInstance& inst) : names_(inst) {}
  FreshTracker() = default;

  std::string operator()(const std::string& base) {
    auto n = names_.fresh(base);
    issued_.push_back(n);
    return n;
  }

  void reserve(const std::string& n) { names_.reserve(n); }
  std::vector<std::string> issued() const { return issued_; }

 private:
  FreshNames names_;
  std::vector<std::string> issued_;
};

inline Reduction finish(ProblemInstance out, ProblemKind source, FreshTracker& fresh, std::size_t bound) {
  Reduction r;
  r.report.source_kind = to_string(source);
  r.report.target_kind = to_string(out.kind);
  r.report.fresh_symbols = fresh.issued();
  r.report.axiom_count = axiom_count(out);
  if (r.report.axiom_count > bound) {
    throw std::logic_error("reduction output has " + std::to_string(r.report.axiom_count) +
                           " axioms, above its bound " + std::to_string(bound));
  }
  if (auto v = instance_violation(out)) throw std::logic_error("reduction produced an invalid instance: " + *v);
  r.instance = std::move(out);
  return r;
}

inline void add_equiv(std::vector<Gci>& tbox, const Concept& a, const Concept& b) {
  tbox.push_back({a, b});
  tbox.push_back({b, a});
}

// Name of an operator in `ops` computing `f`, adding one under f's name
// (suffixed when taken) if missing.
inline std::string ensure_operator(OperatorSet& ops, const BoolFun& f) {
  if (const BoolFun* g = ops.find_function(f)) return g->name;
  BoolFun h = f;
  for (int i = 1; ops.find(h.name); ++i) h.name = f.name + "_" + std::to_string(i);
  ops.add(h);
  return h.name;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Interreductions between the problem kinds

inline Reduction embed(const ProblemInstance& inst, ProblemKind target) {
  if (auto v = instance_violation(inst)) throw PreconditionError(*v);
  detail::FreshTracker fresh(inst);
  ProblemInstance out;
  out.kind = target;
  out.ops = inst.ops;
  const ProblemKind src = inst.kind;
  using K = ProblemKind;
  if (src == K::CSAT && target == K::OSAT) {
    out.ontology.abox.push_back(ConceptAssertion{*inst.query, fresh("_a")});
  } else if (src == K::TSAT && target == K::TCSAT) {
    out.ontology = inst.ontology;
    out.query = Concept::atom(fresh("_A"));
  } else if (src == K::TCSAT && target == K::OSAT) {
    out.ontology = inst.ontology;
    out.ontology.abox.push_back(ConceptAssertion{*inst.query, fresh("_a")});
  } else if (src == K::OSAT && target == K::OCSAT) {
    out.ontology = inst.ontology;
    const std::string a = fresh("_A");
    out.ontology.abox.push_back(ConceptAssertion{Concept::atom(a), fresh("_a")});
    out.query = Concept::atom(a);
  } else if (src == K::OCSAT && target == K::OSAT) {
    out.ontology = inst.ontology;
    out.ontology.abox.push_back(ConceptAssertion{*inst.query, fresh("_a")});
  } else {
    throw PreconditionError("no embedding from " + to_string(src) + " to " + to_string(target));
  }
  return detail::finish(std::move(out), src, fresh, detail::axiom_count(inst) + 1);
}

// Composes single embeddings along csat/tsat -> tcsat -> osat -> ocsat.
inline Reduction embed_chain(const ProblemInstance& inst, ProblemKind target) {
  using K = ProblemKind;
  auto next = [&](K k) -> std::optional<K> {
    if (k == K::OCSAT && target == K::OSAT) return K::OSAT;
    switch (k) {
      case K::CSAT: return K::OSAT;
      case K::TSAT: return K::TCSAT;
      case K::TCSAT: return K::OSAT;
      case K::OSAT: return K::OCSAT;
      default: return std::nullopt;
    }
  };
  if (inst.kind == target) throw PreconditionError("instance is already " + to_string(target));
  Reduction r{inst, {to_string(inst.kind), to_string(inst.kind), {}, detail::axiom_count(inst)}};
  while (r.instance.kind != target) {
    const auto step = next(r.instance.kind);
    if (!step) throw PreconditionError("no embedding from " + to_string(inst.kind) + " to " + to_string(target));
    Reduction s = embed(r.instance, *step);
    r.report.fresh_symbols.insert(r.report.fresh_symbols.end(), s.report.fresh_symbols.begin(),
                                  s.report.fresh_symbols.end());
    r.report.target_kind = s.report.target_kind;
    r.report.axiom_count = s.report.axiom_count;
    r.instance = std::move(s.instance);
  }
  return r;
}

// (T, C) to T plus "top [= some _R . C"; adds a constant-true operator if needed.
inline Reduction tcsat_to_tsat_top(const ProblemInstance& inst) {
  if (inst.kind != ProblemKind::TCSAT) throw PreconditionError("tcsat_to_tsat_top needs a tcsat instance");
  if (auto v = instance_violation(inst)) throw PreconditionError(*v);
  detail::FreshTracker fresh(inst);
  ProblemInstance out;
  out.kind = ProblemKind::TSAT;
  out.ops = inst.ops;
  const std::string top = detail::ensure_operator(out.ops, fns::top());
  out.ontology = inst.ontology;
  out.ontology.tbox.push_back({Concept::apply(top), Concept::exists(fresh("_R"), *inst.query)});
  return detail::finish(std::move(out), inst.kind, fresh, detail::axiom_count(inst) + 1);
}

// Replaces constants by atoms _T and _B pinned down with negation.
inline Reduction eliminate_constants_via_neg(const ProblemInstance& inst) {
  if (auto v = instance_violation(inst)) throw PreconditionError(*v);
  const BoolFun* neg = inst.ops.find_function(fns::neg());
  if (!neg) throw PreconditionError("constant elimination needs negation among the operators");
  detail::FreshTracker fresh(inst);
  std::string t_atom, b_atom;
  auto rewrite = [&](auto&& self, const Concept& c) -> Concept {
    if (c.kind == Concept::Kind::Apply && c.args.empty()) {
      const BoolFun* f = inst.ops.find(c.name);
      if (f->table & 1u) {
        if (t_atom.empty()) t_atom = fresh("_T");
        return Concept::atom(t_atom);
      }
      if (b_atom.empty()) b_atom = fresh("_B");
      return Concept::atom(b_atom);
    }
    Concept out = c;
    for (auto& a : out.args) a = self(self, a);
    return out;
  };
  ProblemInstance out;
  out.kind = inst.kind;
  for (const auto& f : inst.ops) {
    if (f.arity > 0) out.ops.add(f);
  }
  for (const auto& g : inst.ontology.tbox) out.ontology.tbox.push_back({rewrite(rewrite, g.lhs), rewrite(rewrite, g.rhs)});
  for (const auto& a : inst.ontology.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      out.ontology.abox.push_back(ConceptAssertion{rewrite(rewrite, ca->cls), ca->individual});
    } else {
      out.ontology.abox.push_back(a);
    }
  }
  if (inst.query) out.query = rewrite(rewrite, *inst.query);
  if ((!t_atom.empty() || !b_atom.empty()) && inst.kind == ProblemKind::CSAT) {
    throw PreconditionError("constant elimination needs axioms, which csat does not allow");
  }
  if (!t_atom.empty()) {
    out.ontology.tbox.push_back({Concept::apply(neg->name, {Concept::atom(t_atom)}), Concept::atom(t_atom)});
  }
  if (!b_atom.empty()) {
    out.ontology.tbox.push_back({Concept::atom(b_atom), Concept::apply(neg->name, {Concept::atom(b_atom)})});
  }
  return detail::finish(std::move(out), inst.kind, fresh, detail::axiom_count(inst) + 2);
}

struct NegationGadget {
  std::vector<Gci> axioms;
  std::string complement;
  std::string role;
};

// A == some _R<A> . top and _<A>' == all _R<A> . bot, so _<A>' is the
// complement of A in every model. Needs both constants in `ops`.
inline NegationGadget negation_gadget(const OperatorSet& ops, const std::string& atom, FreshNames& names) {
  const BoolFun* top = ops.find_function(fns::top());
  const BoolFun* bot = ops.find_function(fns::bot());
  if (!top || !bot) throw PreconditionError("negation gadget needs both constants among the operators");
  const std::string stem = atom.starts_with("_") ? atom.substr(1) : atom;
  NegationGadget g;
  g.role = names.fresh("_R" + stem);
  g.complement = names.fresh("_" + stem + "'");
  detail::add_equiv(g.axioms, Concept::atom(atom), Concept::exists(g.role, Concept::apply(top->name)));
  detail::add_equiv(g.axioms, Concept::atom(g.complement), Concept::forall(g.role, Concept::apply(bot->name)));
  return g;
}

// `inst` with the gadget for `atom` appended to its TBox.
inline Reduction add_negation_gadget(const ProblemInstance& inst, const std::string& atom) {
  if (inst.kind == ProblemKind::CSAT) throw PreconditionError("csat takes no axioms");
  detail::FreshTracker fresh(inst);
  FreshNames names(inst);
  auto g = negation_gadget(inst.ops, atom, names);
  fresh.reserve(g.role);
  fresh.reserve(g.complement);
  ProblemInstance out = inst;
  for (auto& ax : g.axioms) out.ontology.tbox.push_back(std::move(ax));
  auto r = detail::finish(std::move(out), inst.kind, fresh, detail::axiom_count(inst) + 4);
  r.report.fresh_symbols = {g.role, g.complement};
  return r;
}

// ---------------------------------------------------------------------------
// Base change

namespace detail {

inline Concept term_to_concept(const Term& t, const OperatorSet& base, const std::vector<Concept>& vars) {
  if (t.op < 0) return vars[static_cast<std::size_t>(t.var)];
  Concept c = Concept::apply(base.functions()[static_cast<std::size_t>(t.op)].name);
  for (const auto& a : t.args) c.args.push_back(term_to_concept(a, base, vars));
  return c;
}

}  // namespace detail

inline constexpr int kRepresentationBound = 6;

// One gate atom per distinct subconcept, each defined by an equivalence
// whose operator part is a smallest term over `target`.
inline Reduction change_base(const ProblemInstance& inst, const OperatorSet& target) {
  if (inst.kind == ProblemKind::CSAT) throw PreconditionError("base change produces axioms, which csat does not allow");
  if (auto v = instance_violation(inst)) throw PreconditionError(*v);
  const auto base = std::span<const BoolFun>(target.functions());
  std::map<std::string, Representation> reps;
  for (const auto& opname : signature(inst).operators) {
    const BoolFun& f = *inst.ops.find(opname);
    // A constant is rebuilt as a constant unary function of its own gate.
    BoolFun want = f.arity == 0 ? BoolFun{f.name, 1, (f.table & 1u) ? TableBits{3} : TableBits{0}} : f;
    if (!clone_contains(base, want)) {
      throw PreconditionError("operator '" + opname + "' is not expressible over the target operators");
    }
    auto rep = find_representation(base, want, kRepresentationBound);
    if (!rep) {
      throw PreconditionError("no representation of '" + opname + "' with at most " +
                              std::to_string(kRepresentationBound) + " operator applications");
    }
    reps.emplace(opname, std::move(*rep));
  }

  detail::FreshTracker fresh(inst);
  ProblemInstance out;
  out.kind = inst.kind;
  out.ops = target;
  std::map<std::string, Concept> gate;
  for (const auto& c : subconcepts(inst)) {
    const Concept g = Concept::atom(fresh("_g"));
    gate.emplace(to_string(c), g);
    Concept def;
    switch (c.kind) {
      case Concept::Kind::Atom:
        def = c;
        break;
      case Concept::Kind::Apply: {
        std::vector<Concept> vars;
        for (const auto& a : c.args) vars.push_back(gate.at(to_string(a)));
        if (c.args.empty()) vars.push_back(g);
        def = detail::term_to_concept(reps.at(c.name).term, target, vars);
        break;
      }
      case Concept::Kind::Exists:
        def = Concept::exists(c.name, gate.at(to_string(c.filler())));
        break;
      case Concept::Kind::Forall:
        def = Concept::forall(c.name, gate.at(to_string(c.filler())));
        break;
    }
    detail::add_equiv(out.ontology.tbox, g, def);
  }
  auto out_gate = [&](const Concept& c) { return gate.at(to_string(c)); };
  for (const auto& g : inst.ontology.tbox) out.ontology.tbox.push_back({out_gate(g.lhs), out_gate(g.rhs)});
  for (const auto& a : inst.ontology.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      out.ontology.abox.push_back(ConceptAssertion{out_gate(ca->cls), ca->individual});
    } else {
      out.ontology.abox.push_back(a);
    }
  }
  if (inst.query) out.query = out_gate(*inst.query);
  const std::size_t bound = 2 * gate.size() + detail::axiom_count(inst);
  return detail::finish(std::move(out), inst.kind, fresh, bound);
}

// ---------------------------------------------------------------------------
// QBF and tautology encodings
//
// Symbols: levels _d0.._dn, variables _xi and complements _xi', clause
// atoms _Cj, _Cj', _f, _f'; roles _S, _Ri (level steps), _Rxi, _Rdi,
// _RCj, _P1_j, _P2_j, _F. The axiom count stays below
// kQbfAxiomFactor * (n^2 + m).

inline constexpr std::size_t kQbfAxiomFactor = 16;

namespace detail {

struct QbfNames {
  std::string d(int i) const { return "_d" + std::to_string(i); }
  std::string x(int i) const { return "_x" + std::to_string(i); }
  std::string xp(int i) const { return "_x" + std::to_string(i) + "'"; }
  std::string c(int j) const { return "_C" + std::to_string(j); }
  std::string cp(int j) const { return "_C" + std::to_string(j) + "'"; }
  std::string r(int i) const { return "_R" + std::to_string(i); }
  std::string rx(int i) const { return "_Rx" + std::to_string(i); }
  std::string rd(int i) const { return "_Rd" + std::to_string(i); }
  std::string rc(int j) const { return "_RC" + std::to_string(j); }
  std::string p1(int j) const { return "_P1_" + std::to_string(j); }
  std::string p2(int j) const { return "_P2_" + std::to_string(j); }
};

// The encoding with `top` standing for the true concept. The initial
// axiom and the final quantifier chain are left to the caller.
inline std::vector<Gci> qbf_core_axioms(const Qbf3Cnf& phi, const Concept& top, const Concept& bot) {
  const QbfNames N;
  const int n = phi.vars();
  const int m = static_cast<int>(phi.clauses.size());
  auto A = [](const std::string& s) { return Concept::atom(s); };
  std::vector<Gci> t;
  for (int i = 1; i <= n; ++i) {
    add_equiv(t, A(N.x(i)), Concept::exists(N.rx(i), top));
    add_equiv(t, A(N.xp(i)), Concept::forall(N.rx(i), bot));
  }
  for (int i = 0; i < n; ++i) {
    t.push_back({A(N.d(i)), Concept::exists(N.r(i + 1), A(N.x(i + 1)))});
    t.push_back({A(N.d(i)), Concept::exists(N.r(i + 1), A(N.xp(i + 1)))});
  }
  for (int i = 0; i < n; ++i) t.push_back({A(N.d(i)), Concept::forall(N.r(i + 1), A(N.d(i + 1)))});
  for (int i = 0; i < n; ++i) {
    t.push_back({A(N.d(i)), Concept::exists(N.rd(i), top)});
    for (int j = i + 1; j <= n; ++j) t.push_back({A(N.d(j)), Concept::forall(N.rd(i), bot)});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      t.push_back({A(N.x(i)), Concept::forall(N.r(j), A(N.x(i)))});
      t.push_back({A(N.xp(i)), Concept::forall(N.r(j), A(N.xp(i)))});
    }
  }
  // The atom that holds where literal l is false.
  auto falsifier = [&](int lit) { return A(lit < 0 ? N.x(-lit) : N.xp(lit)); };
  for (int j = 1; j <= m; ++j) {
    const auto& cl = phi.clauses[static_cast<std::size_t>(j - 1)];
    const Concept l1 = falsifier(cl[0]), l2 = falsifier(cl[1]), l3 = falsifier(cl[2]);
    t.push_back({l1, Concept::exists(N.p1(j), top)});
    t.push_back({l2, Concept::forall(N.p1(j), l2)});
    t.push_back({Concept::exists(N.p1(j), l2), Concept::exists(N.p2(j), top)});
    t.push_back({l3, Concept::forall(N.p2(j), l3)});
    t.push_back({Concept::exists(N.p2(j), l3), A(N.cp(j))});
  }
  for (int j = 1; j <= m; ++j) t.push_back({A(N.cp(j)), A("_f")});
  t.push_back({A("_f"), Concept::exists("_F", top)});
  t.push_back({A("_f'"), Concept::forall("_F", bot)});
  for (int j = 1; j <= m; ++j) {
    add_equiv(t, A(N.c(j)), Concept::exists(N.rc(j), top));
    add_equiv(t, A(N.cp(j)), Concept::forall(N.rc(j), bot));
  }
  return t;
}

inline Concept quantifier_chain(const Qbf3Cnf& phi, bool all_universal) {
  const QbfNames N;
  Concept c = Concept::atom("_f'");
  for (int i = phi.vars(); i >= 1; --i) {
    const bool ex = !all_universal && phi.prefix[static_cast<std::size_t>(i - 1)].exists;
    c = ex ? Concept::exists(N.r(i), std::move(c)) : Concept::forall(N.r(i), std::move(c));
  }
  return c;
}

inline std::vector<std::string> qbf_symbols(const Qbf3Cnf& phi, bool with_top_atom) {
  const QbfNames N;
  std::vector<std::string> s;
  for (int i = 0; i <= phi.vars(); ++i) s.push_back(N.d(i));
  for (int i = 1; i <= phi.vars(); ++i) {
    s.push_back(N.x(i));
    s.push_back(N.xp(i));
  }
  for (int j = 1; j <= static_cast<int>(phi.clauses.size()); ++j) {
    s.push_back(N.c(j));
    s.push_back(N.cp(j));
  }
  s.push_back("_f");
  s.push_back("_f'");
  if (!with_top_atom) s.push_back("_S");
  for (int i = 1; i <= phi.vars(); ++i) {
    s.push_back(N.r(i));
    s.push_back(N.rx(i));
  }
  for (int i = 0; i < phi.vars(); ++i) s.push_back(N.rd(i));
  for (int j = 1; j <= static_cast<int>(phi.clauses.size()); ++j) {
    s.push_back(N.rc(j));
    s.push_back(N.p1(j));
    s.push_back(N.p2(j));
  }
  s.push_back("_F");
  if (with_top_atom) s.push_back("_t");
  return s;
}

inline std::size_t qbf_bound(const Qbf3Cnf& phi) {
  const std::size_t n = static_cast<std::size_t>(phi.vars());
  return kQbfAxiomFactor * (n * n + phi.clauses.size());
}

}  // namespace detail

// TSAT over the two constants; satisfiable iff phi is true.
inline Reduction qbf_to_tbox(const Qbf3Cnf& phi) {
  require_well_formed(phi);
  ProblemInstance out;
  out.kind = ProblemKind::TSAT;
  out.ops = OperatorSet{fns::top(), fns::bot()};
  const Concept top = Concept::apply("top"), bot = Concept::apply("bot");
  out.ontology.tbox.push_back({top, Concept::exists("_S", Concept::atom("_d0"))});
  for (auto& g : detail::qbf_core_axioms(phi, top, bot)) out.ontology.tbox.push_back(std::move(g));
  out.ontology.tbox.push_back({Concept::atom("_d0"), detail::quantifier_chain(phi, false)});
  Reduction r;
  r.instance = std::move(out);
  r.report.source_kind = "qbf";
  r.report.target_kind = "tsat";
  r.report.fresh_symbols = detail::qbf_symbols(phi, false);
  r.report.axiom_count = r.instance.ontology.tbox.size();
  if (r.report.axiom_count > detail::qbf_bound(phi)) throw std::logic_error("qbf encoding exceeds its size bound");
  return r;
}

// TCSAT over the false constant with query _d0: the encoding above with the
// true concept replaced by the atom _t, no initial axiom and a purely
// universal chain. Satisfiable iff every assignment satisfies every clause.
inline Reduction taut_to_tcsat(const std::vector<Clause3>& clauses, int n) {
  Qbf3Cnf phi;
  for (int v = 1; v <= n; ++v) phi.prefix.push_back({false, v});
  phi.clauses = clauses;
  require_well_formed(phi);
  ProblemInstance out;
  out.kind = ProblemKind::TCSAT;
  out.ops = OperatorSet{fns::bot()};
  out.ontology.tbox = detail::qbf_core_axioms(phi, Concept::atom("_t"), Concept::apply("bot"));
  out.ontology.tbox.push_back({Concept::atom("_d0"), detail::quantifier_chain(phi, true)});
  out.query = Concept::atom("_d0");
  Reduction r;
  r.instance = std::move(out);
  r.report.source_kind = "taut";
  r.report.target_kind = "tcsat";
  r.report.fresh_symbols = detail::qbf_symbols(phi, true);
  r.report.axiom_count = r.instance.ontology.tbox.size();
  if (r.report.axiom_count > detail::qbf_bound(phi)) throw std::logic_error("tautology encoding exceeds its size bound");
  return r;
}

}  // namespace subalc
