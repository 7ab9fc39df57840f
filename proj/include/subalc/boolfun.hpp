#pragma once

// Boolean functions as truth tables, their structural properties, bounded
// clone closures and smallest-term search.
//
// Table convention: position p of an n-ary table holds f(b1,...,bn) where b1
// is the most significant bit of p and bn the least significant one. So the
// table string "0001" is conjunction and "0111" is disjunction.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "subalc/error.hpp"

namespace subalc {

inline constexpr int kArityCap = 6;

// Table bits for an n-ary function; n <= kArityCap so 2^n <= 64 bits.
using TableBits = std::uint64_t;

inline constexpr TableBits row_mask(int arity) {
  return arity >= 6 ? ~TableBits{0} : ((TableBits{1} << (1u << arity)) - 1);
}

struct BoolFun {
  std::string name;
  int arity = 0;
  TableBits table = 0;

  BoolFun() = default;
  BoolFun(std::string n, int a, TableBits t) : name(std::move(n)), arity(a), table(t & row_mask(a)) {
    if (a < 0 || a > kArityCap) throw PreconditionError("arity " + std::to_string(a) + " outside 0.." + std::to_string(kArityCap));
  }

  // `bits` is a string of 2^arity characters from {0,1}, position 0 first.
  static BoolFun from_string(std::string name, int arity, const std::string& bits) {
    if (arity < 0 || arity > kArityCap) {
      throw PreconditionError("arity " + std::to_string(arity) + " outside 0.." + std::to_string(kArityCap));
    }
    const std::size_t rows = std::size_t{1} << arity;
    if (bits.size() != rows) {
      throw PreconditionError("table length " + std::to_string(bits.size()) + " != " + std::to_string(rows) +
                              " for arity " + std::to_string(arity));
    }
    TableBits t = 0;
    for (std::size_t p = 0; p < rows; ++p) {
      if (bits[p] == '1') {
        t |= TableBits{1} << p;
      } else if (bits[p] != '0') {
        throw PreconditionError(std::string("table character '") + bits[p] + "' is not 0 or 1");
      }
    }
    return BoolFun(std::move(name), arity, t);
  }

  std::size_t rows() const { return std::size_t{1} << arity; }
  bool at(std::size_t row) const { return (table >> row) & 1u; }

  std::string table_string() const {
    std::string s(rows(), '0');
    for (std::size_t p = 0; p < rows(); ++p) s[p] = at(p) ? '1' : '0';
    return s;
  }

  bool same_function(const BoolFun& o) const { return arity == o.arity && table == o.table; }
  friend bool operator==(const BoolFun&, const BoolFun&) = default;
};

// Row index of an argument tuple under the table convention.
inline std::size_t row_of(std::span<const bool> args) {
  std::size_t p = 0;
  for (bool b : args) p = (p << 1) | (b ? 1u : 0u);
  return p;
}

// Value of argument i (0-based) in row p of an n-ary table.
inline bool arg_of_row(std::size_t p, int i, int arity) { return (p >> (arity - 1 - i)) & 1u; }

inline bool eval_fun(const BoolFun& f, std::span<const bool> args) {
  if (static_cast<int>(args.size()) != f.arity) {
    throw PreconditionError("operator " + f.name + " expects " + std::to_string(f.arity) + " arguments, got " +
                            std::to_string(args.size()));
  }
  return f.at(row_of(args));
}

namespace fns {

inline BoolFun top() { return BoolFun::from_string("top", 0, "1"); }
inline BoolFun bot() { return BoolFun::from_string("bot", 0, "0"); }
inline BoolFun id() { return BoolFun::from_string("id", 1, "01"); }
inline BoolFun neg() { return BoolFun::from_string("not", 1, "10"); }
inline BoolFun conj() { return BoolFun::from_string("and", 2, "0001"); }
inline BoolFun disj() { return BoolFun::from_string("or", 2, "0111"); }
inline BoolFun xor_() { return BoolFun::from_string("xor", 2, "0110"); }
inline BoolFun xnor() { return BoolFun::from_string("xnor", 2, "1001"); }
inline BoolFun nand() { return BoolFun::from_string("nand", 2, "1110"); }
inline BoolFun implies() { return BoolFun::from_string("imp", 2, "1101"); }
// x and (y or z)
inline BoolFun s11() { return BoolFun::from_string("s11f", 3, "00000111"); }
// (x and not y) or (x and not z) or (not y and not z)
inline BoolFun d3() { return BoolFun::from_string("d3", 3, "10001110"); }

}  // namespace fns

struct PropertyRecord {
  bool monotone = false;
  bool self_dual = false;
  bool reproduces_false = false;
  bool reproduces_true = false;
  bool separating_false = false;
  bool separating_true = false;

  friend bool operator==(const PropertyRecord&, const PropertyRecord&) = default;
};

namespace detail {

inline bool separating(const BoolFun& f, bool c) {
  if (f.arity == 0) return false;
  for (int i = 0; i < f.arity; ++i) {
    bool ok = true;
    for (std::size_t p = 0; p < f.rows() && ok; ++p) {
      if (f.at(p) == c && arg_of_row(p, i, f.arity) != c) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

inline PropertyRecord fun_properties(const BoolFun& f) {
  PropertyRecord r;
  const std::size_t rows = f.rows();
  const std::size_t all = rows - 1;

  r.monotone = true;
  for (std::size_t p = 0; p < rows && r.monotone; ++p) {
    for (std::size_t q = 0; q < rows; ++q) {
      if ((p & q) == p && f.at(p) && !f.at(q)) {
        r.monotone = false;
        break;
      }
    }
  }

  r.self_dual = true;
  for (std::size_t p = 0; p < rows; ++p) {
    if (f.at(p) == f.at(all ^ p)) {
      r.self_dual = false;
      break;
    }
  }

  r.reproduces_false = !f.at(0);
  r.reproduces_true = f.at(all);
  r.separating_false = detail::separating(f, false);
  r.separating_true = detail::separating(f, true);
  return r;
}

// ---------------------------------------------------------------------------
// Bounded clone closure

// The clone generated by some base, restricted to functions of k fixed
// variables. Members are k-ary tables in discovery order.
struct FunctionSpace {
  int variable_count = 0;
  std::vector<TableBits> members;
  bool closed = false;

  bool contains(TableBits t) const { return std::find(members.begin(), members.end(), t) != members.end(); }
  std::size_t size() const { return members.size(); }
};

inline TableBits projection_table(int k, int var) {
  TableBits t = 0;
  for (std::size_t r = 0; r < (std::size_t{1} << k); ++r) {
    if (arg_of_row(r, var, k)) t |= TableBits{1} << r;
  }
  return t;
}

// Table of f(h1,...,hn) where every hi is a k-ary table.
inline TableBits compose(const BoolFun& f, std::span<const TableBits> args, int k) {
  const TableBits mask = row_mask(k);
  TableBits out = 0;
  for (std::size_t p = 0; p < f.rows(); ++p) {
    if (!f.at(p)) continue;
    TableBits term = mask;
    for (int i = 0; i < f.arity; ++i) {
      term &= arg_of_row(p, i, f.arity) ? args[static_cast<std::size_t>(i)] : ~args[static_cast<std::size_t>(i)];
    }
    out |= term;
  }
  return out & mask;
}

// Lift an a-ary table to k variables (a <= k) by reading the first a variables.
inline TableBits extend_table(const BoolFun& g, int k) {
  TableBits t = 0;
  for (std::size_t r = 0; r < (std::size_t{1} << k); ++r) {
    if (g.at(r >> (k - g.arity))) t |= TableBits{1} << r;
  }
  return t;
}

namespace detail {

inline void check_closure_args(std::span<const BoolFun> base, int k) {
  if (k < 0 || k > kArityCap) throw PreconditionError("closure arity " + std::to_string(k) + " exceeds cap");
  for (const auto& f : base) {
    if (f.arity > kArityCap) throw PreconditionError("operator " + f.name + " exceeds arity cap");
  }
}

// Fixpoint iteration; stops early once `stop_at` is found.
inline FunctionSpace closure_impl(std::span<const BoolFun> base, int k, std::optional<TableBits> stop_at) {
  check_closure_args(base, k);
  FunctionSpace space;
  space.variable_count = k;
  std::unordered_set<TableBits> seen;
  auto add = [&](TableBits t) {
    if (seen.insert(t).second) space.members.push_back(t);
  };
  for (int j = 0; j < k; ++j) add(projection_table(k, j));

  const std::size_t full = k <= 5 ? (std::size_t{1} << (std::size_t{1} << k)) : 0;
  auto finished = [&] {
    return (stop_at && seen.count(*stop_at)) || (full != 0 && space.members.size() == full);
  };

  std::size_t old_size = 0;
  bool first_round = true;
  std::vector<TableBits> args;
  while (!finished()) {
    const std::size_t cur = space.members.size();
    const std::size_t before = cur;
    for (const auto& f : base) {
      const auto n = static_cast<std::size_t>(f.arity);
      if (n == 0) {
        if (first_round) add(compose(f, {}, k));
        continue;
      }
      args.assign(n, 0);
      // Tuples with at least one member discovered in the previous round;
      // `pivot` is the first such position.
      for (std::size_t pivot = 0; pivot < n; ++pivot) {
        if (old_size == cur) break;
        std::vector<std::size_t> idx(n, 0);
        auto lo = [&](std::size_t pos) { return pos == pivot ? old_size : 0; };
        auto hi = [&](std::size_t pos) { return pos < pivot ? old_size : cur; };
        bool empty = false;
        for (std::size_t pos = 0; pos < n; ++pos) {
          idx[pos] = lo(pos);
          if (idx[pos] >= hi(pos)) empty = true;
        }
        if (empty) continue;
        while (true) {
          for (std::size_t pos = 0; pos < n; ++pos) args[pos] = space.members[idx[pos]];
          add(compose(f, args, k));
          bool done = true;
          for (std::size_t pos = n; pos > 0;) {
            --pos;
            if (++idx[pos] < hi(pos)) {
              done = false;
              break;
            }
            idx[pos] = lo(pos);
          }
          if (done) break;
        }
        if (finished()) break;
      }
      if (finished()) break;
    }
    first_round = false;
    old_size = cur;
    if (space.members.size() == before) {
      space.closed = true;
      break;
    }
  }
  if (full != 0 && space.members.size() == full) space.closed = true;
  return space;
}

}  // namespace detail

// Fixpoint of the k projections under application of the base functions.
inline FunctionSpace clone_closure(std::span<const BoolFun> base, int k) {
  return detail::closure_impl(base, k, std::nullopt);
}

// Whether g lies in the clone generated by `base`. Constants are tested as
// constant unary functions.
inline bool clone_contains(std::span<const BoolFun> base, const BoolFun& g) {
  const int k = std::max(g.arity, 1);
  const TableBits target = g.arity == 0 ? (g.at(0) ? row_mask(1) : 0) : g.table;
  return detail::closure_impl(base, k, target).contains(target);
}

// ---------------------------------------------------------------------------
// Named clone predicates

inline bool in_clone_E(const BoolFun& f) {
  if (f.table == 0) return true;
  std::size_t common = f.rows() - 1;
  for (std::size_t p = 0; p < f.rows(); ++p) {
    if (f.at(p)) common &= p;
  }
  for (std::size_t p = 0; p < f.rows(); ++p) {
    if (f.at(p) != ((p & common) == common)) return false;
  }
  return true;
}

inline bool in_clone_E0(const BoolFun& f) { return in_clone_E(f) && !f.at(0); }

inline bool is_projection(const BoolFun& f) {
  for (int i = 0; i < f.arity; ++i) {
    if (f.table == projection_table(f.arity, i)) return true;
  }
  return false;
}

inline bool in_clone_I0(const BoolFun& f) { return f.table == 0 || is_projection(f); }

// Aggregated clone-membership facts that the classification rules test.
struct CloneFacts {
  bool contains_and = false;
  bool contains_or = false;
  bool contains_not = false;
  bool contains_top = false;
  bool contains_bot = false;
  bool all_monotone = false;
  bool all_selfdual = false;
  bool all_r0 = false;
  bool all_r1 = false;
  bool contains_s11_base = false;
  bool equals_E = false;
  bool equals_E0 = false;
  bool equals_I0 = false;
  bool equals_D = false;
  bool equals_BF = false;

  friend bool operator==(const CloneFacts&, const CloneFacts&) = default;
};

inline CloneFacts clone_facts(std::span<const BoolFun> base) {
  CloneFacts c;
  auto has = [&](const BoolFun& g) { return clone_contains(base, g); };
  c.contains_and = has(fns::conj());
  c.contains_or = has(fns::disj());
  c.contains_not = has(fns::neg());
  c.contains_top = has(fns::top());
  c.contains_bot = has(fns::bot());
  c.contains_s11_base = c.contains_bot && has(fns::s11());

  c.all_monotone = c.all_selfdual = c.all_r0 = c.all_r1 = true;
  bool all_E = true, all_E0 = true, all_I0 = true;
  for (const auto& f : base) {
    const auto p = fun_properties(f);
    c.all_monotone = c.all_monotone && p.monotone;
    c.all_selfdual = c.all_selfdual && p.self_dual;
    c.all_r0 = c.all_r0 && p.reproduces_false;
    c.all_r1 = c.all_r1 && p.reproduces_true;
    all_E = all_E && in_clone_E(f);
    all_E0 = all_E0 && in_clone_E0(f);
    all_I0 = all_I0 && in_clone_I0(f);
  }

  c.equals_E = all_E && c.contains_and && c.contains_top && c.contains_bot;
  c.equals_E0 = all_E0 && c.contains_and && c.contains_bot;
  c.equals_I0 = all_I0 && c.contains_bot;
  c.equals_D = c.all_selfdual && has(fns::d3());
  c.equals_BF = c.contains_and && c.contains_not;
  return c;
}

// ---------------------------------------------------------------------------
// Smallest representing term

// A term over operator indices into some base, with numbered variables.
struct Term {
  int op = -1;   // index into the base, or -1 for a variable
  int var = -1;  // variable index when op == -1
  std::vector<Term> args;

  std::size_t applications() const {
    std::size_t n = op >= 0 ? 1 : 0;
    for (const auto& a : args) n += a.applications();
    return n;
  }

  void count_occurrences(std::vector<int>& counts) const {
    if (op < 0) {
      ++counts[static_cast<std::size_t>(var)];
      return;
    }
    for (const auto& a : args) a.count_occurrences(counts);
  }
};

inline std::string variable_name(int var, int arity) {
  if (arity <= 3) return std::string(1, "xyz"[var]);
  return "x" + std::to_string(var + 1);
}

inline std::string term_to_string(const Term& t, std::span<const BoolFun> base, int arity) {
  if (t.op < 0) return variable_name(t.var, arity);
  const auto& f = base[static_cast<std::size_t>(t.op)];
  if (t.args.empty()) return f.name;
  std::string s = f.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ", ";
    s += term_to_string(t.args[i], base, arity);
  }
  return s + ")";
}

inline TableBits term_table(const Term& t, std::span<const BoolFun> base, int arity) {
  if (t.op < 0) return projection_table(arity, t.var);
  std::vector<TableBits> args;
  for (const auto& a : t.args) args.push_back(term_table(a, base, arity));
  return compose(base[static_cast<std::size_t>(t.op)], args, arity);
}

struct Representation {
  Term term;
  std::vector<int> occurrences;  // per target variable
  std::string text;
  std::size_t size = 0;  // operator applications
};

// Exhaustive bottom-up search for a smallest base term denoting `target`,
// at most `max_size` operator applications. Terms are deduplicated by the
// function they denote, keeping the first one found at the least size.
inline std::optional<Representation> find_representation(std::span<const BoolFun> base, const BoolFun& target,
                                                         int max_size = 6) {
  const int k = target.arity;
  const TableBits goal = target.table;

  std::unordered_map<TableBits, int> seen;  // table -> size
  std::vector<std::vector<std::pair<TableBits, Term>>> level(static_cast<std::size_t>(max_size) + 1);

  auto finish = [&](const Term& t) {
    Representation r;
    r.term = t;
    r.occurrences.assign(static_cast<std::size_t>(k), 0);
    t.count_occurrences(r.occurrences);
    r.text = term_to_string(t, base, k);
    r.size = t.applications();
    return r;
  };

  for (int v = 0; v < k; ++v) {
    Term t;
    t.var = v;
    const TableBits tt = projection_table(k, v);
    if (seen.emplace(tt, 0).second) level[0].emplace_back(tt, t);
  }
  for (const auto& [tt, t] : level[0]) {
    if (tt == goal) return finish(t);
  }

  std::vector<std::size_t> sizes;
  std::vector<TableBits> argtabs;
  for (int s = 1; s <= max_size; ++s) {
    auto& out = level[static_cast<std::size_t>(s)];
    for (std::size_t oi = 0; oi < base.size(); ++oi) {
      const auto& f = base[oi];
      const auto n = static_cast<std::size_t>(f.arity);
      if (n == 0) {
        if (s != 1) continue;
        Term t;
        t.op = static_cast<int>(oi);
        const TableBits tt = compose(f, {}, k);
        if (seen.emplace(tt, s).second) {
          out.emplace_back(tt, t);
          if (tt == goal) return finish(t);
        }
        continue;
      }
      // Every split of s-1 applications over the n argument positions.
      sizes.assign(n, 0);
      sizes[n - 1] = static_cast<std::size_t>(s - 1);
      while (true) {
        bool nonempty = true;
        for (std::size_t i = 0; i < n; ++i) {
          if (level[sizes[i]].empty()) nonempty = false;
        }
        if (nonempty) {
          std::vector<std::size_t> pick(n, 0);
          argtabs.assign(n, 0);
          while (true) {
            for (std::size_t i = 0; i < n; ++i) argtabs[i] = level[sizes[i]][pick[i]].first;
            const TableBits tt = compose(f, argtabs, k);
            if (!seen.count(tt)) {
              Term t;
              t.op = static_cast<int>(oi);
              for (std::size_t i = 0; i < n; ++i) t.args.push_back(level[sizes[i]][pick[i]].second);
              seen.emplace(tt, s);
              out.emplace_back(tt, t);
              if (tt == goal) return finish(out.back().second);
            }
            std::size_t i = n;
            bool done = true;
            while (i > 0) {
              --i;
              if (++pick[i] < level[sizes[i]].size()) {
                done = false;
                break;
              }
              pick[i] = 0;
            }
            if (done) break;
          }
        }
        // next composition of s-1 into n ordered parts
        std::size_t i = n - 1;
        while (i > 0 && sizes[i] == 0) --i;
        if (i == 0) break;
        --sizes[i];
        ++sizes[i - 1];
        const std::size_t tail = sizes[i];
        sizes[i] = 0;
        sizes[n - 1] = tail;
      }
    }
  }
  return std::nullopt;
}

}  // namespace subalc
