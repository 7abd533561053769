#include "indsem/program.hpp"

#include <algorithm>

namespace indsem {

std::string to_string(const SourceLoc& loc) {
  return loc.file + ":" + std::to_string(loc.line);
}

bool Program::has_negation() const {
  return std::any_of(templates.begin(), templates.end(),
                     [](const RuleTemplate& r) { return !r.neg_body.empty(); });
}

bool Program::has_variable_head() const {
  return std::any_of(templates.begin(), templates.end(),
                     [](const RuleTemplate& r) { return r.has_variable_head(); });
}

std::string to_string(const RuleTemplate& rule) {
  std::string out = to_string(rule.head);
  if (!rule.is_fact()) {
    out += " :- ";
    bool first = true;
    for (const auto& b : rule.pos_body) {
      if (!first) out += ", ";
      out += to_string(b);
      first = false;
    }
    for (const auto& n : rule.neg_body) {
      if (!first) out += ", ";
      out += "not(" + to_string(n) + ")";
      first = false;
    }
  }
  out += ".";
  return out;
}

std::string to_string(const Program& program) {
  std::string out;
  for (const auto& r : program.templates) out += to_string(r) + "\n";
  if (!program.object_templates.empty()) {
    out += "#object\n";
    for (const auto& r : program.object_templates) out += to_string(r) + "\n";
  }
  return out;
}

std::string dump_atoms(const AtomSet& atoms) {
  std::string out;
  for (const auto& a : atoms) out += to_string(a) + ".\n";
  return out;
}

Program concat(const Program& a, const Program& b) {
  Program out = a;
  out.templates.insert(out.templates.end(), b.templates.begin(), b.templates.end());
  out.object_templates.insert(out.object_templates.end(), b.object_templates.begin(),
                              b.object_templates.end());
  return out;
}

}  // namespace indsem
