#pragma once

#include <string>
#include <string_view>

#include "indsem/program.hpp"
#include "indsem/term.hpp"

namespace indsem {

// Clause syntax: `Head :- L1, ..., Ln.` or `Head.`. Literals are terms or bare
// variables; `not(G)` marks a negative literal and a parenthesized
// conjunction is flattened into the body. `%` starts a comment. A line `#object` routes all following
// clauses into Program::object_templates.
Program parse_program(std::string_view text, const std::string& file = "<input>");

// Ground facts only; throws NonGroundParameter otherwise.
AtomSet parse_paramset(std::string_view text, const std::string& file = "<input>");

// A single term with an optional trailing `.`.
Term parse_query(std::string_view text);

// Convenience for tests and the CLI: a term without variables checks.
Term parse_term(std::string_view text);

Program load_program(const std::string& path);
AtomSet load_paramset(const std::string& path);

}  // namespace indsem
