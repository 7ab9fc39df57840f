#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "subalc/generate.hpp"
#include "subalc/semantics.hpp"

using namespace subalc;

namespace {

std::set<std::size_t> members(const Bitset& b, std::size_t n) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (b.test(i)) out.insert(i);
  }
  return out;
}

Interpretation small_model() {
  Interpretation I;
  I.domain_size = 2;
  I.roles["R"] = {{0, 1}};
  I.concepts["A"] = {1};
  return I;
}

Interpretation random_model(std::mt19937_64& rng, std::size_t n) {
  Interpretation I;
  I.domain_size = n;
  for (const char* a : {"A", "B", "C"}) {
    for (std::size_t x = 0; x < n; ++x) {
      if (rng() & 1) I.concepts[a].insert(x);
    }
  }
  for (const char* r : {"R", "S"}) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (rng() % 3 == 0) I.roles[r].insert({x, y});
      }
    }
  }
  I.individuals = {{"a", 0}, {"b", n - 1}};
  return I;
}

// f(x, y) rebuilt from and/not as a disjunction of minterms, each minterm
// written with and and not only.
Concept and_not_form(const BoolFun& f, const Concept& x, const Concept& y) {
  auto neg = [](Concept c) { return Concept::apply("not", {std::move(c)}); };
  auto conj = [](Concept a, Concept b) { return Concept::apply("and", {std::move(a), std::move(b)}); };
  std::optional<Concept> out;
  for (int row = 0; row < 4; ++row) {
    if (!f.at(static_cast<std::size_t>(row))) continue;
    Concept m = conj(row & 2 ? x : neg(x), row & 1 ? y : neg(y));
    out = out ? neg(conj(neg(*out), neg(m))) : m;
  }
  return out ? *out : conj(x, neg(x));
}

}  // namespace

TEST(Eval, QuantifiersAndOperators) {
  const auto I = small_model();
  const OperatorSet ops{fns::xor_()};
  const auto A = Concept::atom("A");
  EXPECT_EQ(members(eval_concept(I, Concept::exists("R", A), ops), 2), (std::set<std::size_t>{0}));
  EXPECT_EQ(members(eval_concept(I, Concept::forall("R", A), ops), 2), (std::set<std::size_t>{0, 1}));
  const auto x = Concept::apply("xor", {A, Concept::exists("R", A)});
  EXPECT_EQ(members(eval_concept(I, x, ops), 2), (std::set<std::size_t>{0, 1}));
}

TEST(Eval, MatchesNaiveEvaluatorOnRandomModels) {
  std::mt19937_64 rng(11);
  const OperatorSet ops{fns::conj(), fns::neg(), fns::xor_(), fns::top(), fns::s11()};
  InstanceGenerator gen(ops, 5);
  for (int i = 0; i < 300; ++i) {
    const auto I = random_model(rng, 1 + i % 4);
    const auto c = gen.random_concept();
    const auto got = eval_concept(I, c, ops);
    const auto m = oracle::from(I);
    for (std::size_t x = 0; x < I.domain_size; ++x) EXPECT_EQ(got.test(x), oracle::holds(m, c, x, ops)) << to_string(c);
  }
}

TEST(Eval, TableLookupAgreesWithAndNotDecomposition) {
  std::mt19937_64 rng(3);
  for (const auto& f : oracle::all_functions(2)) {
    const OperatorSet ops{f, fns::conj(), fns::neg()};
    const auto A = Concept::atom("A");
    const auto B = Concept::exists("R", Concept::atom("B"));
    for (int i = 0; i < 8; ++i) {
      const auto I = random_model(rng, 2);
      EXPECT_EQ(eval_concept(I, Concept::apply(f.name, {A, B}), ops), eval_concept(I, and_not_form(f, A, B), ops))
          << f.table_string();
    }
  }
}

TEST(Check, ExamplesFromTheDefinitions) {
  const auto neg_lhs = parse_instance("problem tsat\nop not/1 = 10\naxiom not(A) [= A");
  Interpretation I;
  I.domain_size = 2;
  I.concepts["A"] = {0, 1};
  EXPECT_TRUE(check_instance(I, neg_lhs));
  I.concepts["A"] = {0};
  EXPECT_FALSE(check_instance(I, neg_lhs));

  const auto contra = parse_instance("problem tsat\nop not/1 = 10\naxiom A [= not(A)\naxiom not(A) [= A");
  EXPECT_FALSE(oracle::has_model(contra, 3));
  EXPECT_FALSE(bounded_model_search(contra, 3));
}

TEST(Check, AssertionsAndQuery) {
  const auto inst = parse_instance("problem ocsat\nassert A(a)\nassert R(a, b)\nconcept B");
  Interpretation I;
  I.domain_size = 2;
  I.individuals = {{"a", 0}, {"b", 1}};
  I.concepts["A"] = {0};
  I.roles["R"] = {{0, 1}};
  EXPECT_FALSE(check_instance(I, inst));
  I.concepts["B"] = {1};
  EXPECT_TRUE(check_instance(I, inst));
  I.individuals.erase("b");
  EXPECT_THROW(check_instance(I, inst), PreconditionError);
}

TEST(Check, AgreesWithNaiveCheckerOnRandomModels) {
  std::mt19937_64 rng(17);
  InstanceGenerator gen({fns::conj(), fns::neg(), fns::disj()}, 23);
  for (int i = 0; i < 400; ++i) {
    const auto kind = static_cast<ProblemKind>(i % 5);
    const auto inst = gen.instance(kind);
    const auto I = random_model(rng, 1 + i % 3);
    EXPECT_EQ(check_instance(I, inst), oracle::satisfies(oracle::from(I), inst)) << print_instance(inst);
  }
}

TEST(ModelSearch, Examples) {
  const auto q = parse_instance("problem csat\nconcept A");
  const auto m = bounded_model_search(q, 1);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->domain_size, 1u);
  EXPECT_EQ(m->concepts.at("A"), (std::set<std::size_t>{0}));

  const auto t = parse_instance("problem tcsat\nop top/0 = 1\naxiom top [= some R . A\nconcept A");
  const auto m2 = bounded_model_search(t, 1);
  ASSERT_TRUE(m2);
  EXPECT_EQ(m2->concepts.at("A"), (std::set<std::size_t>{0}));
  EXPECT_EQ(m2->roles.at("R"), (std::set<std::pair<std::size_t, std::size_t>>{{0, 0}}));
}

TEST(ModelSearch, AgreesWithNaiveEnumeration) {
  GeneratorShape shape;
  shape.atoms = {"A", "B"};
  shape.roles = {"R"};
  shape.max_depth = 2;
  shape.max_axioms = 2;
  InstanceGenerator gen({fns::conj(), fns::neg(), fns::bot()}, 31, shape);
  int sat = 0;
  for (int i = 0; i < 200; ++i) {
    const auto inst = gen.instance(static_cast<ProblemKind>(i % 5));
    const auto m = bounded_model_search(inst, 2);
    EXPECT_EQ(m.has_value(), oracle::has_model(inst, 2)) << print_instance(inst);
    if (m) {
      ++sat;
      EXPECT_TRUE(oracle::satisfies(oracle::from(*m), inst));
    }
  }
  EXPECT_GT(sat, 20);
  EXPECT_LT(sat, 200);
}

TEST(ModelSearch, BudgetIsEnforced) {
  const auto inst = parse_instance("problem tsat\nop not/1 = 10\naxiom A [= not(A)\naxiom not(A) [= A\naxiom B [= some R . some S . C");
  EXPECT_THROW(bounded_model_search(inst, 3, 1000), BudgetExceeded);
}

TEST(TrivialModels, TrueReproducingOperators) {
  const auto inst = parse_instance(
      "problem ocsat\nop and/2 = 0001\nop or/2 = 0111\naxiom and(A, B) [= some R . or(C, A)\nassert all S . B(a)\n"
      "concept all R . A");
  const auto I = trivial_model_r1(inst);
  EXPECT_EQ(I.domain_size, 1u);
  EXPECT_TRUE(oracle::satisfies(oracle::from(I), inst));
  EXPECT_THROW(trivial_model_r1(parse_instance("problem csat\nop not/1 = 10\nconcept not(A)")), PreconditionError);
}

TEST(TrivialModels, FalseReproducingOperators) {
  for (const char* text : {"problem tsat\nop xor/2 = 0110\naxiom xor(A, B) [= A",
                           "problem tsat\nop bot/0 = 0\naxiom all R . bot [= bot", "problem tsat\n"}) {
    const auto inst = parse_instance(text);
    EXPECT_TRUE(oracle::satisfies(oracle::from(trivial_model_r0(inst)), inst)) << text;
  }
  EXPECT_THROW(trivial_model_r0(parse_instance("problem tcsat\nconcept A")), PreconditionError);
}

TEST(TrivialModels, RandomInstances) {
  InstanceGenerator r1({fns::conj(), fns::implies(), fns::top()}, 41);
  InstanceGenerator r0({fns::xor_(), fns::conj(), fns::bot()}, 43);
  for (int i = 0; i < 100; ++i) {
    const auto a = r1.instance(ProblemKind::OCSAT);
    EXPECT_TRUE(oracle::satisfies(oracle::from(trivial_model_r1(a)), a)) << print_instance(a);
    const auto b = r0.instance(ProblemKind::TSAT);
    EXPECT_TRUE(oracle::satisfies(oracle::from(trivial_model_r0(b)), b)) << print_instance(b);
  }
}

TEST(WitnessFormat, RoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto I = random_model(rng, 1 + i % 4);
    EXPECT_EQ(parse_interpretation(print_interpretation(I)), I);
  }
  const auto I = parse_interpretation("domain 2\natom A = {1}\nrole R = {(0,1)}\nind a = 0\n");
  EXPECT_EQ(I, [] {
    Interpretation J = small_model();
    J.individuals["a"] = 0;
    return J;
  }());
  EXPECT_THROW(parse_interpretation("domain 0\n"), ParseError);
  EXPECT_THROW(parse_interpretation("domain 2\natom A = {2}\n"), ParseError);
}
