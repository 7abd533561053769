#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "indsem/term.hpp"

namespace indsem {

struct SourceLoc {
  std::string file;
  std::size_t line = 0;
};

std::string to_string(const SourceLoc& loc);

// A clause read as a template for all of its ground instances. Negative
// literals are stored without their `not/1` wrapper.
struct RuleTemplate {
  Term head;
  std::vector<Term> pos_body;
  std::vector<Term> neg_body;
  SourceLoc loc;

  bool is_fact() const { return pos_body.empty() && neg_body.empty(); }
  bool has_variable_head() const { return head.is_variable(); }
};

struct Program {
  std::vector<RuleTemplate> templates;
  // Clauses following an `#object` directive; consumed by the meta layer.
  std::vector<RuleTemplate> object_templates;

  bool has_negation() const;
  bool has_variable_head() const;
};

// A fully instantiated rule (h, B, N).
struct GroundRule {
  Term head;
  AtomSet body;
  AtomSet negs;

  friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

// `head :- b1, b2, not(n1).` in canonical form.
std::string to_string(const RuleTemplate& rule);
std::string to_string(const Program& program);

// Sorted ground terms, one `term.` per line.
std::string dump_atoms(const AtomSet& atoms);

Program concat(const Program& a, const Program& b);

}  // namespace indsem
