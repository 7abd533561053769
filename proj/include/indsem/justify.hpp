#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "indsem/program.hpp"
#include "indsem/tabling.hpp"
#include "indsem/term.hpp"

namespace indsem {

struct RuleWitness {
  Term head;
  AtomSet body;
  AtomSet negs;
  SourceLoc loc;
};

struct JustificationStep {
  Term proposition;
  std::optional<RuleWitness> rule;  // empty: the proposition is a parameter

  bool is_parameter() const { return !rule.has_value(); }
};

// Each proposition is a parameter or the head of a ground rule instance whose
// body appears earlier in the sequence and whose negative conditions avoid
// the parameters of its stratum.
struct Justification {
  std::vector<JustificationStep> steps;

  const Term& goal() const { return steps.back().proposition; }
};

// Top-down prover sharing its tables across goals.
class Prover {
 public:
  Prover(const Program& program, const AtomSet& params, SolverOptions options = {});

  // A duplicate-free justification ending in `goal`, or nothing when the goal
  // is not in the least set.
  std::optional<Justification> prove(const Term& goal);

  TabledSolver& solver() { return solver_; }

 private:
  void build(const Term& ground, AnswerRef ref, AtomSet& done, Justification& out);

  TabledSolver solver_;
  Term filler_;
};

std::optional<Justification> prove(const Program& program, const AtomSet& params,
                                   const Term& goal, SolverOptions options = {});

struct VerifyResult {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const { return ok; }
};

// Checks a justification literally against the program's ground instances
// and the parameter set, independent of how it was produced.
VerifyResult verify(const Program& program, const AtomSet& params, const Justification& j);

// `i. <term>  [param]` or `i. <term>  :- <body> ; not <negs>  (file:line)`.
std::string format_justification(const Justification& j);

}  // namespace indsem
