#pragma once

// Finite interpretations, the model checker for generalized operators, a
// brute-force bounded model search and the one-element trivial models.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subalc/bitset.hpp"
#include "subalc/syntax.hpp"

namespace subalc {

struct Interpretation {
  std::size_t domain_size = 1;
  std::map<std::string, std::set<std::size_t>> concepts;
  std::map<std::string, std::set<std::pair<std::size_t, std::size_t>>> roles;
  std::map<std::string, std::size_t> individuals;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

namespace detail {

inline void check_domain(const Interpretation& I) {
  if (I.domain_size == 0) throw PreconditionError("interpretation domain must be nonempty");
}

}  // namespace detail

// Extension of `c` as a subset of {0,...,N-1}. Unmapped atoms and roles are empty.
inline Bitset eval_concept(const Interpretation& I, const Concept& c, const OperatorSet& ops) {
  detail::check_domain(I);
  const std::size_t n = I.domain_size;
  Bitset out(n);
  switch (c.kind) {
    case Concept::Kind::Atom: {
      auto it = I.concepts.find(c.name);
      if (it != I.concepts.end()) {
        for (auto x : it->second) out.set(x);
      }
      return out;
    }
    case Concept::Kind::Apply: {
      const BoolFun* f = ops.find(c.name);
      if (!f) throw PreconditionError("undeclared operator '" + c.name + "'");
      std::vector<Bitset> args;
      args.reserve(c.args.size());
      for (const auto& a : c.args) args.push_back(eval_concept(I, a, ops));
      for (std::size_t x = 0; x < n; ++x) {
        bool buf[kArityCap] = {};
        for (std::size_t i = 0; i < args.size(); ++i) buf[i] = args[i].test(x);
        if (eval_fun(*f, std::span<const bool>(buf, args.size()))) out.set(x);
      }
      return out;
    }
    case Concept::Kind::Exists:
    case Concept::Kind::Forall: {
      const Bitset filler = eval_concept(I, c.filler(), ops);
      const bool exists = c.kind == Concept::Kind::Exists;
      // Forall: start from everything and remove elements with a bad successor.
      if (!exists) {
        for (std::size_t x = 0; x < n; ++x) out.set(x);
      }
      auto it = I.roles.find(c.name);
      if (it != I.roles.end()) {
        for (const auto& [x, y] : it->second) {
          if (exists && filler.test(y)) out.set(x);
          if (!exists && !filler.test(y)) out.reset(x);
        }
      }
      return out;
    }
  }
  return out;
}

inline std::size_t lookup_individual(const Interpretation& I, const std::string& ind) {
  auto it = I.individuals.find(ind);
  if (it == I.individuals.end()) throw PreconditionError("individual '" + ind + "' is not mapped");
  return it->second;
}

inline bool check_instance(const Interpretation& I, const ProblemInstance& inst) {
  for (const auto& g : inst.ontology.tbox) {
    if (!eval_concept(I, g.lhs, inst.ops).is_subset_of(eval_concept(I, g.rhs, inst.ops))) return false;
  }
  for (const auto& a : inst.ontology.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      if (!eval_concept(I, ca->cls, inst.ops).test(lookup_individual(I, ca->individual))) return false;
    } else {
      const auto& ra = std::get<RoleAssertion>(a);
      const auto edge = std::make_pair(lookup_individual(I, ra.from), lookup_individual(I, ra.to));
      auto it = I.roles.find(ra.role);
      if (it == I.roles.end() || !it->second.count(edge)) return false;
    }
  }
  if (kind_has_query(inst.kind)) {
    if (!inst.query || !eval_concept(I, *inst.query, inst.ops).any()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Witness text format

inline std::string print_interpretation(const Interpretation& I) {
  std::ostringstream os;
  os << "domain " << I.domain_size << "\n";
  for (const auto& [a, ext] : I.concepts) {
    os << "atom " << a << " = {";
    bool first = true;
    for (auto x : ext) {
      os << (first ? "" : ",") << x;
      first = false;
    }
    os << "}\n";
  }
  for (const auto& [r, ext] : I.roles) {
    os << "role " << r << " = {";
    bool first = true;
    for (const auto& [x, y] : ext) {
      os << (first ? "" : ",") << "(" << x << "," << y << ")";
      first = false;
    }
    os << "}\n";
  }
  for (const auto& [ind, x] : I.individuals) os << "ind " << ind << " = " << x << "\n";
  return os.str();
}

inline Interpretation parse_interpretation(std::string_view text) {
  Interpretation I;
  bool have_domain = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    // Punctuation becomes whitespace; the keyword fixes how numbers pair up.
    std::string flat;
    for (char c : line) flat += (c == '{' || c == '}' || c == '(' || c == ')' || c == ',' || c == '=') ? ' ' : c;
    std::istringstream ls(flat);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto bad = [&](const std::string& msg) { throw ParseError(ParseErrorKind::Syntax, msg, line_no, 1); };
    auto element = [&](long long v) {
      if (v < 0 || (have_domain && static_cast<std::size_t>(v) >= I.domain_size)) bad("element out of range");
      return static_cast<std::size_t>(v);
    };
    if (kw == "domain") {
      long long n = 0;
      if (!(ls >> n) || n < 1) bad("domain size must be a positive integer");
      I.domain_size = static_cast<std::size_t>(n);
      have_domain = true;
      continue;
    }
    if (!have_domain) bad("'domain' line must come first");
    std::string name;
    if (!(ls >> name)) bad("missing symbol name");
    long long v = 0;
    if (kw == "atom") {
      auto& ext = I.concepts[name];
      while (ls >> v) ext.insert(element(v));
    } else if (kw == "role") {
      auto& ext = I.roles[name];
      long long w = 0;
      while (ls >> v) {
        if (!(ls >> w)) bad("role pair missing second element");
        ext.emplace(element(v), element(w));
      }
    } else if (kw == "ind") {
      if (!(ls >> v)) bad("individual needs an element");
      I.individuals[name] = element(v);
    } else {
      bad("unknown line kind '" + kw + "'");
    }
    if (!ls.eof()) {
      ls.clear();
      std::string rest;
      if (ls >> rest) bad("trailing text '" + rest + "'");
    }
  }
  if (!have_domain) throw ParseError(ParseErrorKind::Syntax, "missing 'domain' line", line_no, 1);
  return I;
}

// ---------------------------------------------------------------------------
// Trivial models

// One element w, every atom {w}, every role {(w,w)}, every individual w.
// Satisfies every instance whose operators are all true-reproducing.
inline Interpretation trivial_model_r1(const ProblemInstance& inst) {
  for (const auto& f : inst.ops) {
    if (!fun_properties(f).reproduces_true) {
      throw PreconditionError("operator '" + f.name + "' is not true-reproducing");
    }
  }
  const auto sig = signature(inst);
  Interpretation I;
  for (const auto& a : sig.atoms) I.concepts[a] = {0};
  for (const auto& r : sig.roles) I.roles[r] = {{0, 0}};
  for (const auto& i : sig.individuals) I.individuals[i] = 0;
  return I;
}

// One element w, every atom empty, every role {(w,w)}. The loop is what
// falsifies left-hand sides such as all R . bot.
inline Interpretation trivial_model_r0(const ProblemInstance& inst) {
  if (inst.kind != ProblemKind::TSAT) throw PreconditionError("trivial_model_r0 needs a tsat instance");
  for (const auto& f : inst.ops) {
    if (!fun_properties(f).reproduces_false) {
      throw PreconditionError("operator '" + f.name + "' is not false-reproducing");
    }
  }
  const auto sig = signature(inst);
  Interpretation I;
  for (const auto& r : sig.roles) I.roles[r] = {{0, 0}};
  return I;
}

// ---------------------------------------------------------------------------
// Bounded model search

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

namespace detail {

// Concept DAG evaluated over domains of at most 64 elements as bit masks.
class MaskEvaluator {
 public:
  struct Node {
    Concept::Kind kind;
    TableBits table = 0;
    int arity = 0;
    std::vector<int> kids;
    int symbol = -1;  // atom or role index
  };

  MaskEvaluator(const ProblemInstance& inst, const std::vector<std::string>& atoms,
                const std::vector<std::string>& roles) {
    for (std::size_t i = 0; i < atoms.size(); ++i) atom_index_[atoms[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < roles.size(); ++i) role_index_[roles[i]] = static_cast<int>(i);
    ops_ = &inst.ops;
  }

  int intern(const Concept& c) {
    const std::string key = to_string(c);
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    Node n;
    n.kind = c.kind;
    for (const auto& a : c.args) n.kids.push_back(intern(a));
    if (c.kind == Concept::Kind::Atom) {
      n.symbol = atom_index_.at(c.name);
    } else if (c.kind == Concept::Kind::Apply) {
      const BoolFun* f = ops_->find(c.name);
      if (!f) throw PreconditionError("undeclared operator '" + c.name + "'");
      n.table = f->table;
      n.arity = f->arity;
    } else {
      n.symbol = role_index_.at(c.name);
    }
    nodes_.push_back(std::move(n));
    const int id = static_cast<int>(nodes_.size() - 1);
    ids_.emplace(key, id);
    return id;
  }

  // atoms[i]: extension mask; succ[r][x]: successor mask of x under role r.
  void evaluate(std::size_t n, const std::vector<std::uint64_t>& atoms,
                const std::vector<std::vector<std::uint64_t>>& succ) {
    const std::uint64_t all = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    values_.resize(nodes_.size());
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      const Node& nd = nodes_[id];
      std::uint64_t v = 0;
      switch (nd.kind) {
        case Concept::Kind::Atom:
          v = atoms[static_cast<std::size_t>(nd.symbol)];
          break;
        case Concept::Kind::Apply:
          for (std::size_t p = 0; p < (std::size_t{1} << nd.arity); ++p) {
            if (!((nd.table >> p) & 1u)) continue;
            std::uint64_t term = all;
            for (int i = 0; i < nd.arity; ++i) {
              const std::uint64_t k = values_[static_cast<std::size_t>(nd.kids[static_cast<std::size_t>(i)])];
              term &= arg_of_row(p, i, nd.arity) ? k : ~k;
            }
            v |= term;
          }
          break;
        case Concept::Kind::Exists: {
          const std::uint64_t f = values_[static_cast<std::size_t>(nd.kids[0])];
          for (std::size_t x = 0; x < n; ++x) {
            if (succ[static_cast<std::size_t>(nd.symbol)][x] & f) v |= std::uint64_t{1} << x;
          }
          break;
        }
        case Concept::Kind::Forall: {
          const std::uint64_t f = values_[static_cast<std::size_t>(nd.kids[0])];
          for (std::size_t x = 0; x < n; ++x) {
            if (!(succ[static_cast<std::size_t>(nd.symbol)][x] & ~f)) v |= std::uint64_t{1} << x;
          }
          break;
        }
      }
      values_[id] = v & all;
    }
  }

  std::uint64_t value(int id) const { return values_[static_cast<std::size_t>(id)]; }

 private:
  const OperatorSet* ops_ = nullptr;
  std::unordered_map<std::string, int> atom_index_;
  std::unordered_map<std::string, int> role_index_;
  std::unordered_map<std::string, int> ids_;
  std::vector<Node> nodes_;
  std::vector<std::uint64_t> values_;
};

}  // namespace detail

// Exhaustive search over interpretations of size 1..maxN on the symbols of
// `inst`. Candidates of one size are visited as a counter whose digits are,
// from most to least significant: atom extensions (atoms in name order,
// element 0 first), role extensions (roles in name order, pairs row-major),
// then individual placements. Returns the first model found.
inline std::optional<Interpretation> bounded_model_search(const ProblemInstance& inst, std::size_t max_n,
                                                          std::uint64_t budget = kDefaultSearchBudget) {
  const auto sig = signature(inst);
  const std::vector<std::string> atoms(sig.atoms.begin(), sig.atoms.end());
  const std::vector<std::string> roles(sig.roles.begin(), sig.roles.end());
  const std::vector<std::string> inds(sig.individuals.begin(), sig.individuals.end());

  detail::MaskEvaluator ev(inst, atoms, roles);
  std::vector<std::pair<int, int>> gcis;
  for (const auto& g : inst.ontology.tbox) gcis.emplace_back(ev.intern(g.lhs), ev.intern(g.rhs));
  struct CA {
    int cls;
    std::size_t ind;
  };
  struct RA {
    std::size_t role, from, to;
  };
  std::vector<CA> cas;
  std::vector<RA> ras;
  auto ind_index = [&](const std::string& s) {
    return static_cast<std::size_t>(std::find(inds.begin(), inds.end(), s) - inds.begin());
  };
  for (const auto& a : inst.ontology.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      cas.push_back({ev.intern(ca->cls), ind_index(ca->individual)});
    } else {
      const auto& ra = std::get<RoleAssertion>(a);
      const auto r = static_cast<std::size_t>(std::find(roles.begin(), roles.end(), ra.role) - roles.begin());
      ras.push_back({r, ind_index(ra.from), ind_index(ra.to)});
    }
  }
  const int query = kind_has_query(inst.kind) && inst.query ? ev.intern(*inst.query) : -1;

  std::uint64_t spent = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const std::size_t atom_bits = atoms.size() * n;
    const std::size_t role_bits = roles.size() * n * n;
    if (n > 64 || atom_bits + role_bits > 62) throw BudgetExceeded("model search space too large at size " + std::to_string(n));
    std::uint64_t placements = 1;
    for (std::size_t i = 0; i < inds.size(); ++i) {
      placements *= n;
      if (placements > budget) break;
    }
    const std::uint64_t atom_space = std::uint64_t{1} << atom_bits;
    const std::uint64_t role_space = std::uint64_t{1} << role_bits;
    const long double total = static_cast<long double>(atom_space) * role_space * placements;
    if (static_cast<long double>(spent) + total > static_cast<long double>(budget)) {
      throw BudgetExceeded("bounded model search needs more than " + std::to_string(budget) + " candidates at size " +
                           std::to_string(n));
    }
    spent += atom_space * role_space * placements;

    std::vector<std::uint64_t> atom_ext(atoms.size());
    std::vector<std::vector<std::uint64_t>> succ(roles.size(), std::vector<std::uint64_t>(n));
    std::vector<std::size_t> place(inds.size());
    const std::uint64_t elem_mask = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t am = 0; am < atom_space; ++am) {
      // Most significant digit = first atom, element 0 first.
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const std::size_t shift = (atoms.size() - 1 - i) * n;
        const std::uint64_t chunk = (am >> shift) & elem_mask;
        std::uint64_t ext = 0;
        for (std::size_t x = 0; x < n; ++x) {
          if ((chunk >> (n - 1 - x)) & 1u) ext |= std::uint64_t{1} << x;
        }
        atom_ext[i] = ext;
      }
      for (std::uint64_t rm = 0; rm < role_space; ++rm) {
        for (std::size_t r = 0; r < roles.size(); ++r) {
          for (std::size_t x = 0; x < n; ++x) {
            std::uint64_t s = 0;
            for (std::size_t y = 0; y < n; ++y) {
              const std::size_t bit = role_bits - 1 - (r * n * n + x * n + y);
              if ((rm >> bit) & 1u) s |= std::uint64_t{1} << y;
            }
            succ[r][x] = s;
          }
        }
        ev.evaluate(n, atom_ext, succ);
        bool tbox_ok = true;
        for (const auto& [l, r] : gcis) {
          if (ev.value(l) & ~ev.value(r)) {
            tbox_ok = false;
            break;
          }
        }
        if (!tbox_ok) continue;
        if (query >= 0 && ev.value(query) == 0) continue;

        std::fill(place.begin(), place.end(), 0);
        while (true) {
          bool ok = true;
          for (const auto& ca : cas) {
            if (!((ev.value(ca.cls) >> place[ca.ind]) & 1u)) {
              ok = false;
              break;
            }
          }
          for (std::size_t i = 0; ok && i < ras.size(); ++i) {
            if (!((succ[ras[i].role][place[ras[i].from]] >> place[ras[i].to]) & 1u)) ok = false;
          }
          if (ok) {
            Interpretation I;
            I.domain_size = n;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
              auto& ext = I.concepts[atoms[i]];
              for (std::size_t x = 0; x < n; ++x) {
                if ((atom_ext[i] >> x) & 1u) ext.insert(x);
              }
            }
            for (std::size_t r = 0; r < roles.size(); ++r) {
              auto& ext = I.roles[roles[r]];
              for (std::size_t x = 0; x < n; ++x) {
                for (std::size_t y = 0; y < n; ++y) {
                  if ((succ[r][x] >> y) & 1u) ext.emplace(x, y);
                }
              }
            }
            for (std::size_t i = 0; i < inds.size(); ++i) I.individuals[inds[i]] = place[i];
            return I;
          }
          std::size_t i = inds.size();
          bool done = true;
          while (i > 0) {
            --i;
            if (++place[i] < n) {
              done = false;
              break;
            }
            place[i] = 0;
          }
          if (done) break;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace subalc
