#include <gtest/gtest.h>

#include <set>
#include <string>

#include "subalc/generate.hpp"
#include "subalc/reductions.hpp"
#include "subalc/syntax.hpp"

using namespace subalc;

namespace {

ParseErrorKind error_kind(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return ParseErrorKind::Syntax;
}

std::vector<std::string> printed(const std::vector<Concept>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(to_string(c));
  return out;
}

}  // namespace

TEST(Parse, ConceptQuery) {
  const auto inst = parse_instance("problem csat\nop and/2 = 0001\nconcept and(A, some R. B)");
  EXPECT_EQ(inst.kind, ProblemKind::CSAT);
  ASSERT_TRUE(inst.query);
  const Concept want = Concept::apply("and", {Concept::atom("A"), Concept::exists("R", Concept::atom("B"))});
  EXPECT_EQ(*inst.query, want);
}

TEST(Parse, TBoxAxiom) {
  const auto inst = parse_instance("problem tsat\nop not/1 = 10\naxiom not(A) [= A");
  ASSERT_EQ(inst.ontology.tbox.size(), 1u);
  EXPECT_EQ(inst.ontology.tbox[0].lhs, Concept::apply("not", {Concept::atom("A")}));
  EXPECT_EQ(inst.ontology.tbox[0].rhs, Concept::atom("A"));
}

TEST(Parse, EquivalenceIsTwoInclusions) {
  const auto inst = parse_instance("problem tsat\naxiom A == all R . B # comment\n");
  ASSERT_EQ(inst.ontology.tbox.size(), 2u);
  EXPECT_EQ(inst.ontology.tbox[0].lhs, inst.ontology.tbox[1].rhs);
  EXPECT_EQ(inst.ontology.tbox[0].rhs, inst.ontology.tbox[1].lhs);
}

TEST(Parse, AssertionsAndNullaryOperators) {
  const auto inst =
      parse_instance("problem ocsat\nop top/0 = 1\nassert some R . top(a)\nassert R(a, b)\nconcept (top)\n");
  ASSERT_EQ(inst.ontology.abox.size(), 2u);
  const auto& ca = std::get<ConceptAssertion>(inst.ontology.abox[0]);
  EXPECT_EQ(ca.individual, "a");
  EXPECT_EQ(ca.cls, Concept::exists("R", Concept::apply("top")));
  const auto& ra = std::get<RoleAssertion>(inst.ontology.abox[1]);
  EXPECT_EQ(ra.role, "R");
  EXPECT_EQ(ra.from, "a");
  EXPECT_EQ(ra.to, "b");
  EXPECT_EQ(*inst.query, Concept::apply("top"));
}

TEST(Parse, ErrorClasses) {
  EXPECT_EQ(error_kind("problem tsat\nop and/2 = 001"), ParseErrorKind::ArityMismatch);
  EXPECT_EQ(error_kind("problem tsat\naxiom and(A, B) [= A"), ParseErrorKind::UndeclaredOperator);
  EXPECT_EQ(error_kind("problem tsat\nop not/1 = 10\naxiom not(A, B) [= A"), ParseErrorKind::ArityMismatch);
  EXPECT_EQ(error_kind("problem tsat\nconcept A"), ParseErrorKind::QueryKindMismatch);
  EXPECT_EQ(error_kind("problem tcsat\naxiom A [= B"), ParseErrorKind::QueryKindMismatch);
  EXPECT_EQ(error_kind("problem tsat\nassert A(a)"), ParseErrorKind::QueryKindMismatch);
  EXPECT_EQ(error_kind("problem tsat\nop _x/1 = 10"), ParseErrorKind::ReservedPrefix);
  EXPECT_EQ(error_kind("problem tsat\nop f/1 = 10\nop f/1 = 01"), ParseErrorKind::DuplicateOperator);
  EXPECT_EQ(error_kind("problem tsat\naxiom A [= some R B"), ParseErrorKind::Syntax);
  EXPECT_EQ(error_kind("problem qsat\n"), ParseErrorKind::Syntax);
}

TEST(Parse, DiagnosticsCarryPositions) {
  try {
    parse_instance("problem tsat\n\naxiom A [= (B");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(Print, RoundTripsTheParseExamples) {
  for (const char* text : {"problem csat\nop and/2 = 0001\nconcept and(A, some R. B)",
                           "problem tsat\nop not/1 = 10\naxiom not(A) [= A",
                           "problem ocsat\nop top/0 = 1\nassert all R . top(a)\nassert R(a, b)\nconcept top"}) {
    const auto inst = parse_instance(text);
    EXPECT_EQ(parse_instance(print_instance(inst)), inst) << text;
  }
}

TEST(Print, NestedApplicationsAreParenthesized) {
  const Concept c = Concept::apply("and", {Concept::apply("not", {Concept::atom("A")}), Concept::atom("B")});
  EXPECT_EQ(to_string(c), "and(not(A), B)");
}

TEST(Print, GeneratedSymbolsKeepTheirPrefix) {
  const auto inst = parse_instance("problem tsat\nop not/1 = 10\naxiom not(A) [= A");
  const auto r = embed(inst, ProblemKind::TCSAT);
  const auto text = print_instance(r.instance);
  EXPECT_NE(text.find("concept _A"), std::string::npos);
  EXPECT_EQ(parse_instance(text), r.instance);
}

TEST(Print, RandomInstancesRoundTrip) {
  const std::vector<OperatorSet> sets{{fns::conj(), fns::neg()}, {fns::xor_(), fns::top(), fns::bot()}, {fns::s11()}};
  std::uint64_t seed = 1;
  for (const auto& ops : sets) {
    InstanceGenerator gen(ops, seed++);
    for (auto kind : {ProblemKind::CSAT, ProblemKind::TSAT, ProblemKind::TCSAT, ProblemKind::OSAT, ProblemKind::OCSAT}) {
      for (int i = 0; i < 40; ++i) {
        const auto inst = gen.instance(kind);
        EXPECT_EQ(parse_instance(print_instance(inst)), inst) << print_instance(inst);
      }
    }
  }
}

TEST(Subconcepts, ChildrenBeforeParents) {
  const auto q = parse_instance("problem csat\nop and/2 = 0001\nconcept and(A, some R. B)");
  EXPECT_EQ(printed(subconcepts(q)), (std::vector<std::string>{"A", "B", "some R . B", "and(A, some R . B)"}));
  const auto t = parse_instance("problem tsat\nop not/1 = 10\naxiom not(A) [= A");
  EXPECT_EQ(printed(subconcepts(t)), (std::vector<std::string>{"A", "not(A)"}));
  EXPECT_TRUE(subconcepts(parse_instance("problem tsat\n")).empty());
}

TEST(Subconcepts, ListIsClosedUnderChildren) {
  InstanceGenerator gen({fns::conj(), fns::neg(), fns::top()}, 7);
  for (int i = 0; i < 50; ++i) {
    const auto list = subconcepts(gen.instance(ProblemKind::OCSAT));
    std::set<std::string> seen;
    for (const auto& c : list) {
      for (const auto& a : c.args) EXPECT_TRUE(seen.count(to_string(a))) << to_string(c);
      EXPECT_TRUE(seen.insert(to_string(c)).second);
    }
  }
}

TEST(OperatorUsage, Examples) {
  const auto inst = parse_instance("problem csat\nop and/2 = 0001\nop top/0 = 1\nconcept and(A, top)");
  const auto v = validate_operator_usage(inst, {fns::conj()});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].op, "top");
  const auto ok = parse_instance("problem csat\nop and/2 = 0001\nconcept and(A, B)");
  EXPECT_TRUE(validate_operator_usage(ok, {fns::conj()}).empty());
}

TEST(OperatorUsage, QbfReductionUsesOnlyConstants) {
  Qbf3Cnf phi{{{true, 1}, {false, 2}}, {{1, -2, 2}, {-1, -1, 2}}};
  const auto r = qbf_to_tbox(phi);
  EXPECT_TRUE(validate_operator_usage(r.instance, {fns::top(), fns::bot()}).empty());
}

TEST(FreshNames, AvoidEverySymbolInUse) {
  const auto inst = parse_instance("problem tcsat\naxiom _A [= some _A_1 . B\nconcept _a");
  FreshNames names(inst);
  EXPECT_EQ(names.fresh("_A"), "_A_2");
  EXPECT_EQ(names.fresh("_a"), "_a_1");
  EXPECT_EQ(names.fresh("_R"), "_R");
}
