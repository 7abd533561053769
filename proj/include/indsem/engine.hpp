#pragma once

#include <cstddef>
#include <vector>

#include "indsem/error.hpp"
#include "indsem/program.hpp"
#include "indsem/term.hpp"

namespace indsem {

struct EvalLimits {
  std::size_t max_atoms = 1'000'000;
  std::size_t max_iterations = 10'000;
};

// A computed set of propositions, plus the number of T applications it took.
struct ModelSet {
  AtomSet atoms;
  std::size_t derivation_count = 0;

  bool contains(const Term& t) const { return atoms.count(t) != 0; }
};

// Thrown when a cap is hit. Carries the prefix computed so far, since the
// least set may simply be infinite.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(const std::string& message, ModelSet partial)
      : Error(ErrorKind::ResourceLimit, message), partial_(std::move(partial)) {}

  const ModelSet& partial() const { return partial_; }

 private:
  ModelSet partial_;
};

// One application of the consequence operator:
//   A ∪ { h : (h,B,N) a ground instance, B ⊆ S ∪ A, N ∩ A = ∅ }.
// Ground instances are produced by matching positive literals left to right
// against S ∪ A. Negative literals are tested against A only.
ModelSet apply_T(const Program& program, const AtomSet& params, const AtomSet& current);

// Least set containing `params` and closed under the program. Programs with
// negation are evaluated stratum by stratum, each stratum's result serving as
// the parameter set of the next. Uses semi-naive iteration; each round
// corresponds to exactly one T application.
ModelSet least_fixpoint(const Program& program, const AtomSet& params,
                        const EvalLimits& limits = {});

// Same, for a program already known to be a single component (no strata).
ModelSet component_fixpoint(const Program& program, const AtomSet& params,
                            const EvalLimits& limits = {});

// All substitutions binding `q` to some member of the least set, in model
// order. A ground query yields a single empty substitution when it holds.
std::vector<Substitution> query(const Program& program, const AtomSet& params, const Term& q,
                                const EvalLimits& limits = {});

// Answers drawn from an already computed model.
std::vector<Substitution> answers_in(const ModelSet& model, const Term& q);

}  // namespace indsem
