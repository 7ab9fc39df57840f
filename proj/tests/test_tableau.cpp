#include <gtest/gtest.h>

#include "oracles.hpp"
#include "subalc/generate.hpp"
#include "subalc/reductions.hpp"
#include "subalc/tableau.hpp"

using namespace subalc;

namespace {

bool sat(const std::string& text) { return decide(parse_instance(text)).satisfiable; }

// A verdict and the naive oracle at domain size `n`: a found model must
// agree with SAT; UNSAT must leave the oracle empty-handed.
void expect_consistent(const ProblemInstance& inst, std::size_t n) {
  const auto v = decide(inst);
  const bool model = oracle::has_model(inst, n);
  if (model) {
    EXPECT_TRUE(v.satisfiable) << print_instance(inst);
  }
  if (v.satisfiable) {
    ASSERT_TRUE(v.witness);
    EXPECT_TRUE(oracle::satisfies(oracle::from(*v.witness), inst)) << print_instance(inst);
  }
}

}  // namespace

TEST(Decide, Examples) {
  const auto v = decide(parse_instance("problem csat\nconcept A"));
  ASSERT_TRUE(v.satisfiable);
  EXPECT_EQ(v.witness->domain_size, 1u);
  EXPECT_FALSE(sat("problem tsat\nop not/1 = 10\naxiom A [= not(A)\naxiom not(A) [= A"));
  EXPECT_FALSE(sat("problem tcsat\nop bot/0 = 0\naxiom A [= bot\nconcept A"));
  EXPECT_TRUE(sat("problem tsat\n"));
}

TEST(Decide, QuantifierInteraction) {
  EXPECT_FALSE(sat("problem csat\nop and/2 = 0001\nop bot/0 = 0\nconcept and(some R . A, all R . bot)"));
  EXPECT_TRUE(sat("problem csat\nop and/2 = 0001\nconcept and(some R . A, all R . B)"));
  // Every element needs an R-successor in A, and A elements need a
  // successor outside A: satisfiable only with a cycle or an infinite chain.
  EXPECT_TRUE(sat("problem tcsat\nop top/0 = 1\nop not/1 = 10\naxiom top [= some R . A\naxiom A [= some R . not(A)\n"
                  "concept A"));
  EXPECT_FALSE(sat("problem tcsat\nop not/1 = 10\naxiom A [= some R . A\naxiom A [= all R . not(A)\nconcept A"));
}

TEST(Decide, AboxAndRoleAssertions) {
  EXPECT_FALSE(sat("problem osat\nop not/1 = 10\nassert all R . A(a)\nassert R(a, b)\nassert not(A)(b)"));
  EXPECT_TRUE(sat("problem osat\nop not/1 = 10\nassert all R . A(a)\nassert R(a, b)\nassert not(A)(a)"));
  EXPECT_FALSE(sat("problem ocsat\nop not/1 = 10\naxiom A [= all R . B\nassert A(a)\nassert R(a, a)\n"
                   "assert not(B)(a)\nconcept A"));
}

TEST(Decide, FigureTwoReductionIsSatisfiable) {
  const Qbf3Cnf phi{{{true, 1}, {false, 2}, {true, 3}}, {{1, -2, 3}, {-1, -2, -3}}};
  ASSERT_TRUE(oracle::qbf_value(phi));
  const auto inst = qbf_to_tbox(phi).instance;
  const auto v = decide(inst);
  ASSERT_TRUE(v.satisfiable);
  EXPECT_TRUE(oracle::satisfies(oracle::from(*v.witness), inst));
}

TEST(Decide, Deterministic) {
  InstanceGenerator gen({fns::conj(), fns::neg()}, 3);
  for (int i = 0; i < 30; ++i) {
    const auto inst = gen.instance(ProblemKind::OCSAT);
    const auto a = decide(inst), b = decide(inst);
    EXPECT_EQ(a.satisfiable, b.satisfiable);
    EXPECT_EQ(a.witness, b.witness);
  }
}

TEST(Decide, BudgetExceededIsReported) {
  const Qbf3Cnf phi{{{true, 1}, {false, 2}, {true, 3}}, {{1, -2, 3}, {-1, -2, -3}}};
  EXPECT_THROW(decide(qbf_to_tbox(phi).instance, 100), BudgetExceeded);
}

TEST(Decide, AgreesWithNaiveOracleOnRandomInstances) {
  GeneratorShape shape;
  shape.atoms = {"A", "B"};
  shape.roles = {"R"};
  shape.individuals = {"a", "b"};
  shape.max_depth = 2;
  shape.max_axioms = 2;
  const std::vector<OperatorSet> sets{{fns::conj(), fns::neg()},
                                      {fns::xor_(), fns::top()},
                                      {fns::disj(), fns::bot()},
                                      {fns::s11(), fns::bot()},
                                      {fns::nand()}};
  std::uint64_t seed = 100;
  for (const auto& ops : sets) {
    InstanceGenerator gen(ops, seed++, shape);
    for (int i = 0; i < 60; ++i) expect_consistent(gen.instance(static_cast<ProblemKind>(i % 5)), 2);
  }
}

TEST(Decide, NonFiniteLookingTBoxStillTerminates) {
  // Each element has an R-successor with a fresh combination; blocking must
  // close the chain.
  const auto inst = parse_instance(
      "problem tcsat\nop xor/2 = 0110\nop top/0 = 1\naxiom top [= some R . xor(A, all R . A)\n"
      "axiom A [= some R . xor(B, A)\nconcept B");
  expect_consistent(inst, 3);
}
