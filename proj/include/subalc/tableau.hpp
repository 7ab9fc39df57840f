#pragma once

// Decision procedure for all five problems over arbitrary operator sets.
//
// Labels are sets of signed concepts (T:C, F:C). Operator concepts are
// handled by the truth table: a signed application is satisfied once the
// known argument values force the required result, forced where every
// remaining row agrees on an argument, and split on one argument otherwise.
// A GCI C [= D asks for F:C or T:D at every element. T:some R . C and
// F:all R . C spawn successors whose initial set collects the fillers
// pushed along R. Elements with an equal initial set or an equal complete
// label are shared, which also covers looping back into an ancestor.
//
// Every literal carries the set of choice points it depends on; members of
// a node's initial set are choice points of their own, so a failed node
// reports the subset of its initial set responsible (a core). Cores are
// cached and a failed successor sends the search straight back to the
// choice that produced the offending literals.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "subalc/bitset.hpp"
#include "subalc/error.hpp"
#include "subalc/semantics.hpp"
#include "subalc/syntax.hpp"

namespace subalc {

inline constexpr std::uint64_t kDefaultTableauBudget = 20'000'000;

struct TableauStats {
  std::uint64_t steps = 0;
  std::size_t elements = 0;
  std::size_t cached_cores = 0;
  std::size_t core_hits = 0;
  std::size_t shared_successors = 0;
};

struct Verdict {
  bool satisfiable = false;
  std::optional<Interpretation> witness;
  TableauStats stats;
};

namespace detail {

class Tableau {
 public:
  Tableau(const ProblemInstance& inst, std::uint64_t budget) : inst_(inst), budget_(budget) {
    if (auto v = instance_violation(inst)) throw PreconditionError(*v);
    for (const auto& g : inst.ontology.tbox) gcis_.emplace_back(intern(g.lhs), intern(g.rhs));
    for_each_root_concept(inst, [&](const Concept& c) { intern(c); });
    S_ = 2 * concepts_.size();
  }

  Verdict run() {
    const auto sig = signature(inst_);
    Problem root;
    root.root = true;
    std::vector<std::string> inds(sig.individuals.begin(), sig.individuals.end());
    std::unordered_map<std::string, std::size_t> slot_of;
    for (std::size_t i = 0; i < inds.size(); ++i) slot_of[inds[i]] = i;
    root.slots = inds.size();
    std::vector<std::size_t> initial;
    for (const auto& a : inst_.ontology.abox) {
      if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
        initial.push_back(slot_of.at(ca->individual) * S_ + pos(ids_.at(to_string(ca->cls))));
      } else {
        const auto& ra = std::get<RoleAssertion>(a);
        root.edges.push_back({role_id(ra.role), slot_of.at(ra.from), slot_of.at(ra.to)});
      }
    }
    if (kind_has_query(inst_.kind) && inst_.query) {
      initial.push_back(root.slots * S_ + pos(ids_.at(to_string(*inst_.query))));
      ++root.slots;
    }
    if (root.slots == 0) root.slots = 1;  // the domain is never empty

    State st;
    st.pb = &root;
    st.deps.resize(root.slots * S_);
    std::optional<Bitset> conflict;
    for (auto lit : initial) {
      if ((conflict = add(st, lit, Bitset()))) break;
    }
    if (!conflict) conflict = search(st, 0);

    Verdict v;
    v.satisfiable = !conflict.has_value();
    if (v.satisfiable) {
      Interpretation I = build_witness(sig, inds);
      if (!check_instance(I, inst_)) throw std::logic_error("tableau produced an invalid witness");
      v.witness = std::move(I);
    }
    stats_.elements = elems_.size();
    stats_.cached_cores = cores_.size();
    v.stats = stats_;
    return v;
  }

 private:
  struct CNode {
    Concept::Kind kind;
    std::string name;
    TableBits table = 0;
    int arity = 0;
    std::vector<std::size_t> kids;
    std::size_t role = 0;
  };

  struct Edge {
    std::size_t role, from, to;
  };

  struct Problem {
    bool root = false;
    std::size_t slots = 1;
    std::vector<Edge> edges;  // ABox role assertions between slots
    const Bitset* initial = nullptr;
  };

  struct State {
    const Problem* pb = nullptr;
    Bitset label;
    std::vector<Bitset> deps;
    std::vector<std::size_t> trail;
    std::size_t pseudo = 0;  // choice points reserved for initial members
  };

  struct Element {
    Bitset label;  // over one slot
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<Bitset> keys;
    bool by_label = false;
  };

  using Result = std::optional<Bitset>;  // nullopt: success; otherwise the conflict

  static std::size_t pos(std::size_t c) { return 2 * c; }
  static std::size_t neg(std::size_t c) { return 2 * c + 1; }

  std::size_t role_id(const std::string& r) {
    auto [it, fresh] = role_ids_.try_emplace(r, role_names_.size());
    if (fresh) role_names_.push_back(r);
    return it->second;
  }

  std::size_t intern(const Concept& c) {
    const std::string key = to_string(c);
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    CNode n;
    n.kind = c.kind;
    n.name = c.name;
    for (const auto& a : c.args) n.kids.push_back(intern(a));
    if (c.kind == Concept::Kind::Apply) {
      const BoolFun* f = inst_.ops.find(c.name);
      if (!f) throw PreconditionError("undeclared operator '" + c.name + "'");
      if (static_cast<std::size_t>(f->arity) != c.args.size()) {
        throw PreconditionError("operator '" + c.name + "' applied to the wrong number of arguments");
      }
      n.table = f->table;
      n.arity = f->arity;
    } else if (c.kind != Concept::Kind::Atom) {
      n.role = role_id(c.name);
    }
    concepts_.push_back(std::move(n));
    ids_.emplace(key, concepts_.size() - 1);
    return concepts_.size() - 1;
  }

  void tick() {
    if (++stats_.steps > budget_) {
      throw BudgetExceeded("tableau exceeded its budget of " + std::to_string(budget_) + " steps");
    }
  }

  Result add(State& st, std::size_t lit, Bitset deps) {
    if (st.label.test(lit)) return std::nullopt;
    if (st.label.test(lit ^ 1)) {
      deps |= st.deps[lit ^ 1];
      return deps;
    }
    st.label.set(lit);
    st.deps[lit] = std::move(deps);
    st.trail.push_back(lit);
    return std::nullopt;
  }

  static void undo(State& st, std::size_t mark) {
    while (st.trail.size() > mark) {
      st.label.reset(st.trail.back());
      st.trail.pop_back();
    }
  }

  // One scan over the label. Fills `forced` or `branch`, or returns a clash.
  struct Scan {
    std::vector<std::pair<std::size_t, Bitset>> forced;
    std::optional<std::pair<std::size_t, std::size_t>> branch;  // options in order
  };

  Result scan(const State& st, Scan& out) {
    std::optional<std::pair<std::size_t, std::size_t>> gci_branch;
    Result clash;
    st.label.for_each([&](std::size_t lit) {
      if (clash) return;
      const std::size_t base = lit - lit % S_;
      const std::size_t c = (lit % S_) / 2;
      const bool sign = !(lit & 1u);
      const CNode& n = concepts_[c];
      if (n.kind == Concept::Kind::Apply) {
        const int k = n.arity;
        std::size_t known = 0, value = 0;
        Bitset why = st.deps[lit];
        for (int i = 0; i < k; ++i) {
          const std::size_t bit = std::size_t{1} << (k - 1 - i);
          const std::size_t kid = n.kids[static_cast<std::size_t>(i)];
          if (st.label.test(base + pos(kid))) {
            known |= bit;
            value |= bit;
            why |= st.deps[base + pos(kid)];
          } else if (st.label.test(base + neg(kid))) {
            known |= bit;
            why |= st.deps[base + neg(kid)];
          }
        }
        bool any_sign = false, all_sign = true;
        std::size_t first = 0, agree = 0;
        for (std::size_t p = 0; p < (std::size_t{1} << k); ++p) {
          if ((p ^ value) & known) continue;
          if (static_cast<bool>((n.table >> p) & 1u) == sign) {
            if (!any_sign) {
              first = p;
              agree = ~std::size_t{0};
            } else {
              agree &= ~(p ^ first);
            }
            any_sign = true;
          } else {
            all_sign = false;
          }
        }
        if (!any_sign) {
          clash = std::move(why);
          return;
        }
        if (all_sign) return;
        bool forced = false;
        for (int i = 0; i < k; ++i) {
          const std::size_t bit = std::size_t{1} << (k - 1 - i);
          if ((known & bit) || !(agree & bit)) continue;
          const std::size_t kid = n.kids[static_cast<std::size_t>(i)];
          out.forced.emplace_back(base + ((first & bit) ? pos(kid) : neg(kid)), why);
          forced = true;
        }
        if (!forced && !out.branch) {
          for (int i = 0; i < k; ++i) {
            const std::size_t bit = std::size_t{1} << (k - 1 - i);
            if (known & bit) continue;
            const std::size_t kid = n.kids[static_cast<std::size_t>(i)];
            const std::size_t pref = base + ((first & bit) ? pos(kid) : neg(kid));
            out.branch = {pref, pref ^ 1};
            break;
          }
        }
        return;
      }
      // Role assertions carry universal constraints between named slots.
      const bool universal = (n.kind == Concept::Kind::Forall && sign) || (n.kind == Concept::Kind::Exists && !sign);
      if (universal && !st.pb->edges.empty()) {
        const std::size_t slot = lit / S_;
        for (const auto& e : st.pb->edges) {
          if (e.from != slot || e.role != n.role) continue;
          const std::size_t target = e.to * S_ + (sign ? pos(n.kids[0]) : neg(n.kids[0]));
          if (!st.label.test(target)) out.forced.emplace_back(target, st.deps[lit]);
        }
      }
    });
    if (clash) return clash;
    for (std::size_t slot = 0; slot < st.pb->slots; ++slot) {
      const std::size_t base = slot * S_;
      for (const auto& [l, r] : gcis_) {
        if (st.label.test(base + pos(r)) || st.label.test(base + neg(l))) continue;
        if (st.label.test(base + pos(l))) {
          out.forced.emplace_back(base + pos(r), st.deps[base + pos(l)]);
        } else if (st.label.test(base + neg(r))) {
          out.forced.emplace_back(base + neg(l), st.deps[base + neg(r)]);
        } else if (!gci_branch) {
          gci_branch = {base + neg(l), base + pos(r)};
        }
      }
    }
    if (!out.branch) out.branch = gci_branch;
    return std::nullopt;
  }

  Result search(State& st, std::size_t depth) {
    const std::size_t mark = st.trail.size();
    while (true) {
      tick();
      Scan sc;
      if (Result c = scan(st, sc)) {
        undo(st, mark);
        return c;
      }
      if (!sc.forced.empty()) {
        for (auto& [lit, why] : sc.forced) {
          if (Result c = add(st, lit, std::move(why))) {
            undo(st, mark);
            return c;
          }
        }
        continue;
      }
      if (!sc.branch) {
        Result r = complete(st);
        undo(st, mark);
        return r;
      }
      const std::size_t level = st.pseudo + depth;
      Bitset acc;
      for (std::size_t option : {sc.branch->first, sc.branch->second}) {
        const std::size_t m2 = st.trail.size();
        Bitset d;
        d.set(level);
        Result c = add(st, option, std::move(d));
        if (!c) c = search(st, depth + 1);
        undo(st, m2);
        if (!c) {
          undo(st, mark);
          return std::nullopt;
        }
        if (!c->test(level)) {
          undo(st, mark);
          return c;
        }
        c->reset(level);
        acc |= *c;
      }
      undo(st, mark);
      return acc;
    }
  }

  Bitset slot_label(const State& st, std::size_t slot) const {
    Bitset out(S_);
    st.label.for_each([&](std::size_t lit) {
      if (lit / S_ == slot) out.set(lit % S_);
    });
    return out;
  }

  void truncate(std::size_t checkpoint) {
    for (std::size_t id = elems_.size(); id-- > checkpoint;) {
      for (const auto& k : elems_[id].keys) {
        if (auto it = by_initial_.find(k); it != by_initial_.end() && it->second == id) by_initial_.erase(it);
      }
      if (elems_[id].by_label) {
        if (auto it = by_label_.find(elems_[id].label); it != by_label_.end() && it->second == id) by_label_.erase(it);
      }
    }
    elems_.resize(checkpoint);
  }

  void remember(const Bitset& initial, std::size_t id) {
    by_initial_[initial] = id;
    elems_[id].keys.push_back(initial);
  }

  // Complete, clash-free label: register the element(s) and expand successors.
  Result complete(const State& st) {
    const Problem& pb = *st.pb;
    if (!pb.root) {
      Bitset lab = slot_label(st, 0);
      if (auto it = by_label_.find(lab); it != by_label_.end()) {
        ++stats_.shared_successors;
        remember(*pb.initial, it->second);
        return std::nullopt;
      }
    }
    const std::size_t checkpoint = elems_.size();
    for (std::size_t slot = 0; slot < pb.slots; ++slot) {
      Element e;
      e.label = slot_label(st, slot);
      elems_.push_back(std::move(e));
    }
    if (pb.root) {
      for (const auto& e : pb.edges) elems_[checkpoint + e.from].edges.emplace_back(e.role, checkpoint + e.to);
    } else {
      elems_[checkpoint].by_label = true;
      by_label_[elems_[checkpoint].label] = checkpoint;
      remember(*pb.initial, checkpoint);
    }

    for (std::size_t slot = 0; slot < pb.slots; ++slot) {
      const std::size_t base = slot * S_;
      const Bitset lab = elems_[checkpoint + slot].label;
      std::vector<std::size_t> generators;
      lab.for_each([&](std::size_t s) {
        const CNode& n = concepts_[s / 2];
        const bool sign = !(s & 1u);
        if ((n.kind == Concept::Kind::Exists && sign) || (n.kind == Concept::Kind::Forall && !sign)) {
          generators.push_back(s);
        }
      });
      for (std::size_t g : generators) {
        const CNode& gn = concepts_[g / 2];
        std::vector<std::pair<std::size_t, Bitset>> members;
        auto push = [&](std::size_t lit, const Bitset& why) {
          for (auto& [l, w] : members) {
            if (l == lit) {
              w |= why;
              return;
            }
          }
          members.emplace_back(lit, why);
        };
        push((g & 1u) ? neg(gn.kids[0]) : pos(gn.kids[0]), st.deps[base + g]);
        lab.for_each([&](std::size_t s) {
          const CNode& n = concepts_[s / 2];
          const bool sign = !(s & 1u);
          if (n.role != gn.role) return;
          if (n.kind == Concept::Kind::Forall && sign) push(pos(n.kids[0]), st.deps[base + s]);
          if (n.kind == Concept::Kind::Exists && !sign) push(neg(n.kids[0]), st.deps[base + s]);
        });
        std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        auto res = solve_child(members);
        if (const auto* core = std::get_if<Bitset>(&res)) {
          // The successor exists because of the generator, whatever the core.
          Bitset why = st.deps[base + g];
          core->for_each([&](std::size_t lit) {
            for (const auto& [l, w] : members) {
              if (l == lit) why |= w;
            }
          });
          truncate(checkpoint);
          return why;
        }
        elems_[checkpoint + slot].edges.emplace_back(gn.role, std::get<std::size_t>(res));
      }
    }
    return std::nullopt;
  }

  // Element id on success, otherwise the failing core (a subset of the members).
  std::variant<std::size_t, Bitset> solve_child(const std::vector<std::pair<std::size_t, Bitset>>& members) {
    Bitset initial(S_);
    for (const auto& m : members) initial.set(m.first);
    if (auto it = by_initial_.find(initial); it != by_initial_.end()) {
      ++stats_.shared_successors;
      return it->second;
    }
    for (const auto& core : cores_) {
      if (core.is_subset_of(initial)) {
        ++stats_.core_hits;
        return core;
      }
    }
    Problem pb;
    pb.initial = &initial;
    State st;
    st.pb = &pb;
    st.deps.resize(S_);
    st.pseudo = members.size();
    Result conflict;
    for (std::size_t i = 0; i < members.size() && !conflict; ++i) {
      Bitset d;
      d.set(i);
      conflict = add(st, members[i].first, std::move(d));
    }
    if (!conflict) conflict = search(st, 0);
    if (!conflict) return by_initial_.at(initial);
    Bitset core(S_);
    conflict->for_each([&](std::size_t level) {
      if (level >= members.size()) throw std::logic_error("unresolved choice point in a failed successor");
      core.set(members[level].first);
    });
    cores_.push_back(core);
    return core;
  }

  Interpretation build_witness(const Signature& sig, const std::vector<std::string>& inds) const {
    Interpretation I;
    I.domain_size = elems_.size();
    for (const auto& a : sig.atoms) I.concepts[a];
    for (const auto& r : sig.roles) I.roles[r];
    for (std::size_t id = 0; id < elems_.size(); ++id) {
      elems_[id].label.for_each([&](std::size_t s) {
        const CNode& n = concepts_[s / 2];
        if (n.kind == Concept::Kind::Atom && !(s & 1u)) I.concepts[n.name].insert(id);
      });
      for (const auto& [r, to] : elems_[id].edges) I.roles[role_names_[r]].emplace(id, to);
    }
    for (std::size_t i = 0; i < inds.size(); ++i) I.individuals[inds[i]] = i;
    return I;
  }

  const ProblemInstance& inst_;
  std::uint64_t budget_;
  std::vector<CNode> concepts_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::unordered_map<std::string, std::size_t> role_ids_;
  std::vector<std::string> role_names_;
  std::vector<std::pair<std::size_t, std::size_t>> gcis_;
  std::size_t S_ = 0;
  std::vector<Element> elems_;
  std::unordered_map<Bitset, std::size_t, BitsetHash> by_initial_;
  std::unordered_map<Bitset, std::size_t, BitsetHash> by_label_;
  std::vector<Bitset> cores_;
  TableauStats stats_;
};

}  // namespace detail

inline Verdict decide(const ProblemInstance& inst, std::uint64_t budget = kDefaultTableauBudget) {
  return detail::Tableau(inst, budget).run();
}

}  // namespace subalc
