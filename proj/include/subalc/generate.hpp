#pragma once

// Seeded random instances for equisatisfiability sweeps.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "subalc/syntax.hpp"

namespace subalc {

struct GeneratorShape {
  std::vector<std::string> atoms{"A", "B", "C"};
  std::vector<std::string> roles{"R", "S"};
  std::vector<std::string> individuals{"a", "b"};
  int max_depth = 3;
  int max_axioms = 3;  // GCIs plus assertions
};

class InstanceGenerator {
 public:
  InstanceGenerator(OperatorSet ops, std::uint64_t seed, GeneratorShape shape = {})
      : ops_(std::move(ops)), shape_(std::move(shape)), rng_(seed) {
    for (const auto& f : ops_) (f.arity == 0 ? constants_ : connectives_).push_back(&f);
  }

  const OperatorSet& ops() const { return ops_; }

  Concept concept_of_depth(int depth) {
    const int leaves = static_cast<int>(shape_.atoms.size() + constants_.size());
    if (depth == 0 || pick(4) == 0) {
      const int i = pick(leaves);
      if (i < static_cast<int>(shape_.atoms.size())) return Concept::atom(shape_.atoms[static_cast<std::size_t>(i)]);
      return Concept::apply(constants_[static_cast<std::size_t>(i) - shape_.atoms.size()]->name);
    }
    const int choice = pick(static_cast<int>(connectives_.size()) + 2);
    if (choice < static_cast<int>(connectives_.size())) {
      const BoolFun& f = *connectives_[static_cast<std::size_t>(choice)];
      Concept c = Concept::apply(f.name);
      for (int i = 0; i < f.arity; ++i) c.args.push_back(concept_of_depth(depth - 1));
      return c;
    }
    const std::string& role = shape_.roles[static_cast<std::size_t>(pick(static_cast<int>(shape_.roles.size())))];
    Concept filler = concept_of_depth(depth - 1);
    return choice == static_cast<int>(connectives_.size()) ? Concept::exists(role, std::move(filler))
                                                          : Concept::forall(role, std::move(filler));
  }

  Concept random_concept() { return concept_of_depth(shape_.max_depth); }

  ProblemInstance instance(ProblemKind kind) {
    ProblemInstance inst;
    inst.kind = kind;
    inst.ops = ops_;
    if (kind != ProblemKind::CSAT) {
      const bool abox = kind == ProblemKind::OSAT || kind == ProblemKind::OCSAT;
      const int total = 1 + pick(shape_.max_axioms);
      const int assertions = abox ? pick(total + 1) : 0;
      for (int i = 0; i < total - assertions; ++i) inst.ontology.tbox.push_back({random_concept(), random_concept()});
      for (int i = 0; i < assertions; ++i) {
        const auto& a = individual();
        if (pick(3) == 0) {
          const auto& r = shape_.roles[static_cast<std::size_t>(pick(static_cast<int>(shape_.roles.size())))];
          inst.ontology.abox.push_back(RoleAssertion{r, a, individual()});
        } else {
          inst.ontology.abox.push_back(ConceptAssertion{random_concept(), a});
        }
      }
    }
    if (kind_has_query(kind)) inst.query = random_concept();
    return inst;
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  const std::string& individual() {
    return shape_.individuals[static_cast<std::size_t>(pick(static_cast<int>(shape_.individuals.size())))];
  }

  OperatorSet ops_;
  GeneratorShape shape_;
  std::mt19937_64 rng_;
  std::vector<const BoolFun*> constants_;
  std::vector<const BoolFun*> connectives_;
};

}  // namespace subalc
