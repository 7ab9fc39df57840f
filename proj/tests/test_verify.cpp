#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "subalc/verify.hpp"

using namespace subalc;

TEST(Suites, SmallRunsPass) {
  SuiteOptions o;
  o.count = 20;
  for (const auto& name : {"interreductions", "trivial-models", "rebase", "tiny"}) {
    const auto r = run_suite(name, o);
    EXPECT_TRUE(r.passed()) << name << ": " << r.summary();
    EXPECT_GT(r.instances, 0u) << name;
  }
}

TEST(Suites, QbfAndTautologyAtOneVariable) {
  SuiteOptions o;
  o.vars = 1;
  EXPECT_EQ(run_suite("qbf", o).summary(), "30 instances, 30 agreements");
  const auto t = run_suite("taut", o);
  EXPECT_TRUE(t.passed());
  EXPECT_EQ(t.instances, 1u + 4u + 10u);
}

TEST(Suites, UnknownNameIsRejected) { EXPECT_THROW(run_suite("everything", {}), PreconditionError); }

TEST(Suites, ResultRecordsFirstCounterexample) {
  SuiteResult r("demo");
  r.record(true, [] { return std::string("a"); });
  r.record(false, [] { return std::string("b"); });
  r.record(false, [] { return std::string("c"); });
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.summary(), "3 instances, 1 agreements");
  EXPECT_EQ(r.counterexample, "b");
}

TEST(CloneTable, EveryRowPasses) {
  const auto r = verify_clone_table();
  EXPECT_TRUE(r.passed()) << r.counterexample.value_or("");
  EXPECT_EQ(clone_table().size(), 12u);
}

TEST(TinyFamily, WithinTheDeclaredShape) {
  const auto family = tiny_family();
  std::set<std::string> seen;
  for (const auto& inst : family) {
    EXPECT_LE(inst.ontology.tbox.size(), 2u);
    const auto sig = signature(inst);
    EXPECT_LE(sig.atoms.size(), 2u);
    EXPECT_LE(sig.roles.size(), 1u);
    for_each_root_concept(inst, [](const Concept& c) { EXPECT_LE(c.depth(), 2u); });
    EXPECT_TRUE(seen.insert(print_instance(inst)).second);
  }
}

TEST(TinyFamily, SampleAgreesWithNaiveOracle) {
  const auto family = tiny_family();
  for (std::size_t i = 0; i < family.size(); i += 97) {
    const auto& inst = family[i];
    EXPECT_EQ(decide(inst).satisfiable, oracle::has_model(inst, 3)) << print_instance(inst);
  }
}
