#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "indsem/engine.hpp"
#include "indsem/program.hpp"
#include "indsem/term.hpp"

namespace indsem {

// Head templates of a program beside its literal templates, split by sign. Each template
// stands for all of its ground instances, so membership of a ground atom in
// the ground projection is a one-way match against one of these.
struct ComponentSignature {
  AtomSet heads;
  AtomSet bodies;
  AtomSet negs;

  bool in_heads(const Term& ground) const;
  bool in_bodies(const Term& ground) const;
  bool in_negs(const Term& ground) const;
};

ComponentSignature signature(const Program& program);

struct AllowabilityViolation {
  Term atom;
  Term head;
  SourceLoc loc;
};

// Empty iff no parameter unifies with a head template.
std::vector<AllowabilityViolation> check_allowable(const Program& program, const AtomSet& params);

struct DependencyEdge {
  std::size_t from;  // depending template
  std::size_t to;    // template whose head the literal may use
  bool negative;
  // Head-overlap edges tie together templates whose heads unify; they carry
  // no literal but keep such templates in one component.
  bool overlap = false;
};

struct Stratification {
  // Template indices per stratum, lowest stratum first.
  std::vector<std::vector<std::size_t>> strata;
  std::vector<DependencyEdge> edges;
  // Template indices of a cycle through a negative edge, first == last.
  // Empty iff the program is stratified.
  std::vector<std::size_t> negative_cycle;

  bool stratified() const { return negative_cycle.empty(); }
};

Stratification stratify(const Program& program);

// Human-readable rule-location path of the negative cycle.
std::string describe_cycle(const Program& program, const Stratification& strat);

struct UnifiablePair {
  Term upper;
  SourceLoc upper_loc;
  Term lower;
  SourceLoc lower_loc;
};

// Pairs violating the composition precondition: a head of `upper` unifying
// any head or literal of `lower`.
std::vector<UnifiablePair> composition_conflicts(const Program& upper, const Program& lower);

// F_upper(F_lower(A)) as two chained fixpoints. With `verify`, also evaluates
// the union in one go and throws CompositionMismatch if they differ.
ModelSet compose(const Program& upper, const Program& lower, const AtomSet& params,
                 bool verify = false, const EvalLimits& limits = {});

// M ⊨ P iff F_P(A) ∩ H_P = M ∩ H_P with A = ((B_P ∪ N_P) − H_P) ∩ M.
bool satisfies(const AtomSet& model, const Program& program, const EvalLimits& limits = {});

}  // namespace indsem
