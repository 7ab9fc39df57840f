#pragma once

// Complexity verdicts for an operator set, read off its clone.

#include <stdexcept>
#include <string>
#include <vector>

#include "subalc/boolfun.hpp"
#include "subalc/syntax.hpp"

namespace subalc {

enum class Level { Trivial, InP, CoNP_complete, CoNP_hard, PSPACE_complete, PSPACE_hard, EXPTIME_hard };

inline std::string to_string(Level l) {
  switch (l) {
    case Level::Trivial: return "trivial";
    case Level::InP: return "in P";
    case Level::CoNP_complete: return "coNP-complete";
    case Level::CoNP_hard: return "coNP-hard";
    case Level::PSPACE_complete: return "PSPACE-complete";
    case Level::PSPACE_hard: return "PSPACE-hard";
    case Level::EXPTIME_hard: return "EXPTIME-hard";
  }
  return {};
}

// Position in the hardness order; complete and hard share a rank.
inline int rank(Level l) {
  switch (l) {
    case Level::Trivial: return 0;
    case Level::InP: return 1;
    case Level::CoNP_complete:
    case Level::CoNP_hard: return 2;
    case Level::PSPACE_complete:
    case Level::PSPACE_hard: return 3;
    case Level::EXPTIME_hard: return 4;
  }
  return -1;
}

struct Classification {
  Level level = Level::InP;
  std::string rule;
  std::vector<std::string> notes;
  CloneFacts facts;

  // Set when a monotonicity guard kept a stronger bound from applying.
  bool guarded = false;

  std::string line() const { return to_string(level) + (rule.empty() ? "" : " (" + rule + ")"); }
};

inline Classification classify_csat(const OperatorSet& ops) {
  Classification c;
  c.facts = clone_facts(ops.functions());
  const auto& f = c.facts;
  if (f.contains_s11_base) {
    c.level = Level::PSPACE_complete;
    c.rule = "Theorem 2(1)";
  } else if (f.equals_E || f.equals_E0) {
    c.level = Level::CoNP_complete;
    c.rule = "Theorem 2(2)";
  } else if (f.all_r1) {
    c.level = Level::Trivial;
    c.rule = "Theorem 2(3)";
  } else {
    c.level = Level::InP;
    c.rule = "Theorem 2(4)";
  }
  return c;
}

inline Classification classify_theory(const OperatorSet& ops, ProblemKind kind) {
  if (kind == ProblemKind::CSAT) throw PreconditionError("classify_theory covers the problems with axioms");
  Classification c;
  c.facts = clone_facts(ops.functions());
  const auto& f = c.facts;
  const bool tsat = kind == ProblemKind::TSAT;
  const std::string cor = tsat ? "Corollary 2" : "Corollary 1";
  // E0/V0 for the query problems, E/V (with the true constant) for tsat.
  const bool lattice_low = tsat ? (f.contains_top && f.contains_bot && (f.contains_and || f.contains_or))
                                 : (f.contains_bot && (f.contains_and || f.contains_or));
  if (lattice_low && f.all_monotone) {
    c.level = Level::EXPTIME_hard;
    c.rule = cor + "(1)";
  } else if (f.equals_D || f.equals_BF) {
    c.level = Level::EXPTIME_hard;
    c.rule = cor + "(2)";
  } else if (f.contains_not || (f.contains_top && f.contains_bot)) {
    c.level = Level::PSPACE_hard;
    c.rule = cor + "(3)";
  } else if (!tsat && f.contains_bot) {
    c.level = Level::CoNP_hard;
    c.rule = cor + "(4)";
  } else if (!tsat && f.all_r1) {
    c.level = Level::Trivial;
    c.rule = cor + "(5)";
  } else if (tsat && (f.all_r0 || f.all_r1)) {
    c.level = Level::Trivial;
    c.rule = cor + "(4)";
  } else {
    throw std::logic_error("no classification rule matched");
  }

  if (lattice_low && !f.all_monotone && c.level != Level::EXPTIME_hard) {
    c.guarded = true;
    c.notes.push_back(std::string(tsat ? "E or V" : "E0 or V0") +
                      " is contained in [B] but [B] is not monotone, so clause (1) does not apply;"
                      " a stronger bound may follow from lattice propagation");
  }
  if (!tsat && (f.contains_and || f.contains_or) && !f.contains_bot) {
    c.notes.push_back("Theorem 3(1) states EXPTIME-hardness when and/or is available, but [B] lacks the false"
                      " constant and is therefore true-reproducing; the corollary is followed");
  }
  return c;
}

inline Classification classify(const OperatorSet& ops, ProblemKind kind) {
  return kind == ProblemKind::CSAT ? classify_csat(ops) : classify_theory(ops, kind);
}

}  // namespace subalc
