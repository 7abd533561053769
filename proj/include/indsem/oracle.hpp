#pragma once

#include <cstddef>
#include <vector>

#include "indsem/program.hpp"
#include "indsem/term.hpp"

// Deliberately naive reference implementations, used to cross-check the
// engine and the prover. Nothing here shares code with either.
namespace indsem::oracle {

struct FiniteUniverse {
  AtomSet atoms;
};

// Exhaustive instantiation of every template. A variable that occurs as a
// bare literal or head ranges over the universe atoms and their subterms;
// any other variable ranges over the proper subterms of the universe atoms
// and the ground subterms written in the program.
std::vector<GroundRule> preground(const Program& program, const FiniteUniverse& universe,
                                  std::size_t max_instances = 2'000'000);

// Iterates the closure condition literally from A: add h whenever B ⊆ S and
// N ∩ A = ∅.
AtomSet naive_least_closed(const std::vector<GroundRule>& rules, const AtomSet& params);

// Splits the ground rules by strongly connected components of the atom
// dependency graph and closes them bottom-up, each component taking
// everything below it as parameters. Throws Unstratifiable when a component
// depends negatively on itself.
AtomSet stratified_least_closed(const std::vector<GroundRule>& rules, const AtomSet& params);

// True iff `candidate` contains A, is closed under every rule (h ∈ S whenever
// B ⊆ S and N ∩ S = ∅) and no proper subset containing A is. Enumerates all
// subsets; throws UniverseTooLarge beyond `max_free` non-parameter atoms.
bool minimality_check(const std::vector<GroundRule>& rules, const AtomSet& params,
                      const AtomSet& candidate, std::size_t max_free = 20);

}  // namespace indsem::oracle
