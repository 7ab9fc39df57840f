#pragma once

// Prenex quantified 3-CNF, a brute-force evaluator, an exhaustive
// enumerator for small test corpora and a QDIMACS-like reader/writer.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "subalc/error.hpp"

namespace subalc {

using Clause3 = std::array<int, 3>;

struct Quantifier {
  bool exists = true;
  int var = 1;

  friend bool operator==(const Quantifier&, const Quantifier&) = default;
};

struct Qbf3Cnf {
  std::vector<Quantifier> prefix;  // x1..xn in order
  std::vector<Clause3> clauses;

  int vars() const { return static_cast<int>(prefix.size()); }

  friend bool operator==(const Qbf3Cnf&, const Qbf3Cnf&) = default;
};

inline constexpr int kQbfEvalCap = 20;

// Empty string when well-formed.
inline std::string qbf_violation(const Qbf3Cnf& phi) {
  if (phi.prefix.empty()) return "formula needs at least one variable";
  for (std::size_t i = 0; i < phi.prefix.size(); ++i) {
    if (phi.prefix[i].var != static_cast<int>(i) + 1) {
      return "prefix must quantify x1..xn in order (position " + std::to_string(i + 1) + " has x" +
             std::to_string(phi.prefix[i].var) + ")";
    }
  }
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    for (int lit : phi.clauses[j]) {
      if (lit == 0 || std::abs(lit) > phi.vars()) {
        return "clause " + std::to_string(j + 1) + " has literal " + std::to_string(lit) + " outside x1..x" +
               std::to_string(phi.vars());
      }
    }
  }
  return {};
}

inline void require_well_formed(const Qbf3Cnf& phi) {
  if (auto v = qbf_violation(phi); !v.empty()) throw PreconditionError("malformed formula: " + v);
}

// Bit i-1 of `assignment` is the value of x_i.
inline bool eval_matrix(const std::vector<Clause3>& clauses, std::uint32_t assignment) {
  for (const auto& c : clauses) {
    bool sat = false;
    for (int lit : c) {
      const bool v = (assignment >> (std::abs(lit) - 1)) & 1u;
      if (v == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace detail {

inline bool eval_qbf_from(const Qbf3Cnf& phi, std::size_t level, std::uint32_t assignment) {
  if (level == phi.prefix.size()) return eval_matrix(phi.clauses, assignment);
  const bool lo = eval_qbf_from(phi, level + 1, assignment);
  if (phi.prefix[level].exists && lo) return true;
  if (!phi.prefix[level].exists && !lo) return false;
  return eval_qbf_from(phi, level + 1, assignment | (std::uint32_t{1} << level));
}

}  // namespace detail

inline bool eval_qbf(const Qbf3Cnf& phi) {
  require_well_formed(phi);
  if (phi.vars() > kQbfEvalCap) {
    throw PreconditionError("eval_qbf handles at most " + std::to_string(kQbfEvalCap) + " variables");
  }
  return detail::eval_qbf_from(phi, 0, 0);
}

// All clauses over x1..xn as sorted literal triples (a multiset of three
// literals), literals ordered -1 < 1 < -2 < 2 < ...
inline std::vector<Clause3> distinct_clauses(int n) {
  std::vector<int> lits;
  for (int v = 1; v <= n; ++v) {
    lits.push_back(-v);
    lits.push_back(v);
  }
  std::vector<Clause3> out;
  for (std::size_t a = 0; a < lits.size(); ++a) {
    for (std::size_t b = a; b < lits.size(); ++b) {
      for (std::size_t c = b; c < lits.size(); ++c) out.push_back({lits[a], lits[b], lits[c]});
    }
  }
  return out;
}

// Every prefix (2^n, inner loop, bit i set = x_{i+1} universal) for every
// multiset of at most `max_clauses` clauses from distinct_clauses(n), clause
// sets ordered by size then lexicographically by clause index.
// Length: 2^n * C(d + k, k) summed as multisets, d = distinct clause count.
inline std::vector<Qbf3Cnf> enumerate_qbfs(int n, int max_clauses) {
  if (n < 1 || n > 3 || max_clauses < 0 || max_clauses > 2) {
    throw PreconditionError("exhaustive enumeration needs 1 <= n <= 3 and 0 <= max_clauses <= 2");
  }
  const auto pool = distinct_clauses(n);
  std::vector<std::vector<Clause3>> sets;
  sets.push_back({});
  std::vector<std::vector<std::size_t>> frontier{{}};
  for (int size = 1; size <= max_clauses; ++size) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& idx : frontier) {
      const std::size_t start = idx.empty() ? 0 : idx.back();
      for (std::size_t k = start; k < pool.size(); ++k) {
        auto grown = idx;
        grown.push_back(k);
        std::vector<Clause3> cs;
        for (auto i : grown) cs.push_back(pool[i]);
        sets.push_back(std::move(cs));
        next.push_back(std::move(grown));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Qbf3Cnf> out;
  out.reserve(sets.size() << n);
  for (const auto& cs : sets) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      Qbf3Cnf phi;
      for (int v = 1; v <= n; ++v) phi.prefix.push_back({!((mask >> (v - 1)) & 1u), v});
      phi.clauses = cs;
      out.push_back(std::move(phi));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// QDIMACS-like text:
//   c comment
//   p cnf <n> <m>
//   e 1 3 0
//   a 2 0
//   1 -2 3 0
// Missing quantifier lines leave variables existential.

inline Qbf3Cnf parse_qdimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  int n = -1;
  long long m = -1;
  std::vector<int> quant(1, 0);  // 0 unset, 1 exists, 2 forall
  std::vector<int> order;
  Qbf3Cnf phi;
  bool in_clauses = false;
  auto bad = [&](const std::string& msg) { throw ParseError(ParseErrorKind::Syntax, msg, line_no, 1); };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c") continue;
    if (head == "p") {
      std::string fmt;
      if (n >= 0) bad("duplicate problem line");
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 1 || m < 0) bad("expected 'p cnf <vars> <clauses>'");
      quant.assign(static_cast<std::size_t>(n) + 1, 0);
      continue;
    }
    if (n < 0) bad("problem line 'p cnf' must come first");
    if (head == "e" || head == "a") {
      if (in_clauses) bad("quantifier line after clauses");
      int v = 0;
      bool closed = false;
      while (ls >> v) {
        if (v == 0) {
          closed = true;
          break;
        }
        if (v < 0 || v > n) bad("quantified variable " + std::to_string(v) + " out of range");
        if (quant[static_cast<std::size_t>(v)] != 0) bad("variable " + std::to_string(v) + " quantified twice");
        quant[static_cast<std::size_t>(v)] = head == "e" ? 1 : 2;
        order.push_back(v);
      }
      if (!closed) bad("quantifier line must end with 0");
      continue;
    }
    in_clauses = true;
    std::istringstream cs(line);
    std::vector<int> lits;
    int v = 0;
    bool closed = false;
    while (cs >> v) {
      if (v == 0) {
        closed = true;
        break;
      }
      if (std::abs(v) > n) bad("literal " + std::to_string(v) + " out of range");
      lits.push_back(v);
    }
    if (!closed) bad("clause line must end with 0");
    if (lits.size() != 3) bad("clause must have exactly 3 literals, found " + std::to_string(lits.size()));
    phi.clauses.push_back({lits[0], lits[1], lits[2]});
  }
  if (n < 0) throw ParseError(ParseErrorKind::Syntax, "missing 'p cnf' line", line_no, 1);
  if (static_cast<long long>(phi.clauses.size()) != m) {
    throw ParseError(ParseErrorKind::Syntax,
                     "header declares " + std::to_string(m) + " clauses, found " + std::to_string(phi.clauses.size()),
                     line_no, 1);
  }
  // The prefix must list x1..xn in order; unlisted variables are existential.
  int expect = 1;
  for (int v : order) {
    if (v != expect) {
      throw ParseError(ParseErrorKind::Syntax, "quantifier prefix must list variables 1..n in order", line_no, 1);
    }
    ++expect;
  }
  if (!order.empty() && static_cast<int>(order.size()) != n) {
    throw ParseError(ParseErrorKind::Syntax, "quantifier prefix must cover every variable", line_no, 1);
  }
  for (int v = 1; v <= n; ++v) phi.prefix.push_back({quant[static_cast<std::size_t>(v)] != 2, v});
  return phi;
}

inline std::string print_qdimacs(const Qbf3Cnf& phi) {
  std::ostringstream os;
  os << "p cnf " << phi.vars() << " " << phi.clauses.size() << "\n";
  std::size_t i = 0;
  while (i < phi.prefix.size()) {
    const bool e = phi.prefix[i].exists;
    os << (e ? "e" : "a");
    for (; i < phi.prefix.size() && phi.prefix[i].exists == e; ++i) os << " " << phi.prefix[i].var;
    os << " 0\n";
  }
  for (const auto& c : phi.clauses) os << c[0] << " " << c[1] << " " << c[2] << " 0\n";
  return os.str();
}

inline std::string to_string(const Qbf3Cnf& phi) {
  std::string s;
  for (const auto& q : phi.prefix) s += std::string(q.exists ? "E" : "A") + "x" + std::to_string(q.var) + " ";
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    if (j) s += " & ";
    s += "(";
    for (std::size_t k = 0; k < 3; ++k) {
      const int lit = phi.clauses[j][k];
      if (k) s += " | ";
      s += (lit < 0 ? "-x" : "x") + std::to_string(std::abs(lit));
    }
    s += ")";
  }
  if (phi.clauses.empty()) s += "true";
  return s;
}

}  // namespace subalc
