#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "subalc/classify.hpp"
#include "subalc/generate.hpp"
#include "subalc/semantics.hpp"

using namespace subalc;

namespace {

const std::vector<ProblemKind> kTheory{ProblemKind::TSAT, ProblemKind::TCSAT, ProblemKind::OSAT, ProblemKind::OCSAT};

struct Pinned {
  OperatorSet ops;
  std::string csat, tsat, tcsat;  // osat and ocsat agree with tcsat
};

std::vector<Pinned> pinned() {
  return {
      {{fns::conj(), fns::neg()}, "PSPACE-complete (Theorem 2(1))", "EXPTIME-hard (Corollary 2(2))",
       "EXPTIME-hard (Corollary 1(2))"},
      {{fns::s11(), fns::bot()}, "PSPACE-complete (Theorem 2(1))", "trivial (Corollary 2(4))",
       "EXPTIME-hard (Corollary 1(1))"},
      {{fns::conj(), fns::bot()}, "coNP-complete (Theorem 2(2))", "trivial (Corollary 2(4))",
       "EXPTIME-hard (Corollary 1(1))"},
      {{fns::conj(), fns::top(), fns::bot()}, "coNP-complete (Theorem 2(2))", "EXPTIME-hard (Corollary 2(1))",
       "EXPTIME-hard (Corollary 1(1))"},
      {{fns::disj(), fns::bot()}, "in P (Theorem 2(4))", "trivial (Corollary 2(4))", "EXPTIME-hard (Corollary 1(1))"},
      {{fns::disj()}, "trivial (Theorem 2(3))", "trivial (Corollary 2(4))", "trivial (Corollary 1(5))"},
      {{fns::conj()}, "trivial (Theorem 2(3))", "trivial (Corollary 2(4))", "trivial (Corollary 1(5))"},
      {{fns::neg()}, "in P (Theorem 2(4))", "PSPACE-hard (Corollary 2(3))", "PSPACE-hard (Corollary 1(3))"},
      {{fns::top(), fns::bot()}, "in P (Theorem 2(4))", "PSPACE-hard (Corollary 2(3))", "PSPACE-hard (Corollary 1(3))"},
      {{fns::bot()}, "in P (Theorem 2(4))", "trivial (Corollary 2(4))", "coNP-hard (Corollary 1(4))"},
      {{fns::conj(), fns::xor_()}, "PSPACE-complete (Theorem 2(1))", "trivial (Corollary 2(4))",
       "coNP-hard (Corollary 1(4))"},
      {{fns::d3()}, "in P (Theorem 2(4))", "EXPTIME-hard (Corollary 2(2))", "EXPTIME-hard (Corollary 1(2))"},
  };
}

// 200 operator sets of one to three functions of arity at most 2, drawn
// with a fixed seed from the 22 functions of arity 0, 1 and 2.
std::vector<OperatorSet> sample_sets() {
  std::vector<BoolFun> pool;
  for (int k = 0; k <= 2; ++k) {
    for (auto f : oracle::all_functions(k)) {
      f.name = "f" + std::to_string(k) + "_" + f.table_string();
      pool.push_back(f);
    }
  }
  std::mt19937_64 rng(2024);
  std::vector<OperatorSet> out;
  for (int i = 0; i < 200; ++i) {
    OperatorSet ops;
    const int size = 1 + static_cast<int>(rng() % 3);
    while (static_cast<int>(ops.size()) < size) {
      const auto& f = pool[rng() % pool.size()];
      if (!ops.find(f.name)) ops.add(f);
    }
    out.push_back(ops);
  }
  return out;
}

bool clone_subset(const OperatorSet& a, const OperatorSet& b) {
  for (const auto& f : a) {
    if (!clone_contains(b.functions(), f)) return false;
  }
  return true;
}

}  // namespace

TEST(Classify, PinnedTable) {
  for (const auto& row : pinned()) {
    const auto name = print_operator_set(row.ops);
    EXPECT_EQ(classify(row.ops, ProblemKind::CSAT).line(), row.csat) << name;
    EXPECT_EQ(classify(row.ops, ProblemKind::TSAT).line(), row.tsat) << name;
    for (auto k : {ProblemKind::TCSAT, ProblemKind::OSAT, ProblemKind::OCSAT}) {
      EXPECT_EQ(classify(row.ops, k).line(), row.tcsat) << name << to_string(k);
    }
  }
}

TEST(Classify, NotesForTheGuardAndTheConstantFreeCase) {
  const auto guarded = classify({fns::conj(), fns::xor_()}, ProblemKind::TCSAT);
  EXPECT_TRUE(guarded.guarded);
  ASSERT_FALSE(guarded.notes.empty());
  EXPECT_NE(guarded.notes[0].find("not monotone"), std::string::npos);

  const auto and_only = classify({fns::conj()}, ProblemKind::OCSAT);
  ASSERT_EQ(and_only.notes.size(), 1u);
  EXPECT_NE(and_only.notes[0].find("Theorem 3(1)"), std::string::npos);
  EXPECT_TRUE(classify({fns::conj(), fns::bot()}, ProblemKind::OCSAT).notes.empty());
}

TEST(Classify, CsatRequiresTheorySplit) {
  EXPECT_THROW(classify_theory({fns::conj()}, ProblemKind::CSAT), PreconditionError);
}

TEST(Classify, SweepNeverReachesTheUnmatchedCase) {
  for (const auto& ops : sample_sets()) {
    for (auto k : {ProblemKind::CSAT, ProblemKind::TSAT, ProblemKind::TCSAT, ProblemKind::OSAT, ProblemKind::OCSAT}) {
      EXPECT_NO_THROW(classify(ops, k)) << print_operator_set(ops);
    }
  }
}

TEST(Classify, FactsAreConsistent) {
  for (const auto& ops : sample_sets()) {
    const auto f = clone_facts(ops.functions());
    if (f.equals_BF) {
      EXPECT_TRUE(f.contains_and && f.contains_not);
    }
    if (f.all_r1) {
      EXPECT_FALSE(f.contains_bot);
    }
    if (f.all_r0) {
      EXPECT_FALSE(f.contains_top);
    }
  }
}

// Larger clones never get a lower verdict, except where the monotonicity
// guard of the EXPTIME clause withholds the stronger bound.
TEST(Classify, HardnessIsMonotoneInTheClone) {
  const auto sets = sample_sets();
  for (std::size_t i = 0; i < 60; ++i) {
    for (std::size_t j = 0; j < 60; ++j) {
      if (i == j || !clone_subset(sets[i], sets[j])) continue;
      for (auto k : kTheory) {
        const auto lo = classify(sets[i], k), hi = classify(sets[j], k);
        if (hi.guarded) continue;
        EXPECT_LE(rank(lo.level), rank(hi.level))
            << print_operator_set(sets[i]) << "vs\n" << print_operator_set(sets[j]) << to_string(k);
      }
    }
  }
}

TEST(Classify, ProblemChainIsConsistent) {
  for (const auto& ops : sample_sets()) {
    const int tsat = rank(classify(ops, ProblemKind::TSAT).level);
    const int tcsat = rank(classify(ops, ProblemKind::TCSAT).level);
    EXPECT_LE(tsat, tcsat) << print_operator_set(ops);
    EXPECT_EQ(tcsat, rank(classify(ops, ProblemKind::OSAT).level));
    EXPECT_EQ(tcsat, rank(classify(ops, ProblemKind::OCSAT).level));
  }
}

TEST(Classify, TrivialVerdictsHaveTrivialModels) {
  std::uint64_t seed = 900;
  int checked = 0;
  for (const auto& ops : sample_sets()) {
    for (auto k : kTheory) {
      if (classify(ops, k).level != Level::Trivial) continue;
      InstanceGenerator gen(ops, seed++);
      const auto f = clone_facts(ops.functions());
      for (int i = 0; i < 100; ++i) {
        const auto inst = gen.instance(k);
        const auto I = f.all_r1 ? trivial_model_r1(inst) : trivial_model_r0(inst);
        ASSERT_TRUE(oracle::satisfies(oracle::from(I), inst)) << print_instance(inst);
      }
      ++checked;
    }
    if (checked > 40) break;
  }
  EXPECT_GT(checked, 10);
}
