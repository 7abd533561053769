#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "indsem/program.hpp"
#include "indsem/term.hpp"

namespace indsem {

struct SolverOptions {
  std::size_t max_tables = 200'000;
  std::size_t max_answers = 1'000'000;
  // Nesting depth of table creation (recursion of the evaluator).
  std::size_t max_depth = 2'000;
  // Calls deeper than this are generalized before tabling, which keeps
  // regressions like clause(clause(clause(...),_),_) finite.
  std::size_t call_depth = 10;
};

struct AnswerRef {
  std::size_t table = 0;
  std::size_t index = 0;
};

// How an answer was obtained: a parameter, or a rule instance whose positive
// literals were answered by earlier answers.
struct AnswerSupport {
  bool parameter = false;
  std::size_t rule = 0;
  Term head = Term::constant("true");
  std::vector<Term> body;
  std::vector<AnswerRef> body_refs;
  std::vector<Term> negs;
};

struct Answer {
  Term term;
  AnswerSupport support;
};

// Goal-directed evaluation over the same ground-instance semantics as the
// bottom-up engine. Calls are tabled by variant; each table accumulates
// answers (possibly non-ground, standing for all their instances) until a
// fixpoint is reached over every table the call reaches. A negative literal
// must be ground when reached and is decided by completing its own table
// first, which stratification guarantees is independent of the caller.
//
// Every answer's support refers only to answers inserted before it, so the
// support graph is well-founded.
class TabledSolver {
 public:
  TabledSolver(Program program, AtomSet params, SolverOptions options = {});
  ~TabledSolver();
  TabledSolver(const TabledSolver&) = delete;
  TabledSolver& operator=(const TabledSolver&) = delete;

  // Instances of `goal` in the least set, deduplicated up to variants.
  std::vector<Term> solve(const Term& goal);

  // An answer subsuming the ground atom, if it belongs to the least set.
  std::optional<AnswerRef> find(const Term& ground);

  bool holds(const Term& ground) { return find(ground).has_value(); }

  const Answer& answer(AnswerRef ref) const;
  const Program& program() const { return program_; }
  const AtomSet& params() const { return params_; }

  std::size_t table_count() const;

 private:
  struct Table;
  struct RuleUse;

  std::size_t table_for(const Term& call);
  void evaluate(std::size_t t);
  void solve_body(std::size_t t, const RuleUse& use, std::size_t j, const Substitution& theta,
                  std::vector<AnswerRef>& refs);
  void add_answer(std::size_t t, const RuleUse& use, const Substitution& theta,
                  const std::vector<AnswerRef>& refs, std::vector<Term> negs);
  void complete(std::size_t root);
  bool provable(const Term& ground);
  std::string fresh_suffix();

  Program program_;
  AtomSet params_;
  SolverOptions options_;
  std::unordered_map<std::string, std::vector<Term>> param_buckets_;
  std::vector<std::unique_ptr<Table>> tables_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::unordered_set<std::size_t> evaluating_;
  std::size_t total_answers_ = 0;
  std::size_t depth_ = 0;
  std::size_t rename_counter_ = 0;
};

}  // namespace indsem
