#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "indsem/program.hpp"
#include "indsem/term.hpp"

namespace indsem::meta {

// `true.` and `(A,B) :- A, B.`, which give rule bodies their meaning as
// propositions. The negation metarule `not(X) :- not(X).` cannot be
// stratified; asking for it throws Unsupported.
Program builtin_rules(bool with_negation_metarule = false);

// `call(X) :- X.`
Program call_rule();

// The variable-head interpreter `H :- clause(H,Body), Body.`
Program clause_interpreter();

// Body literals as a term: `true` when empty, the literal itself when
// single, right-nested ','/2 pairs otherwise.
Term encode_body(const std::vector<Term>& literals);
std::vector<Term> decode_body(const Term& body);

// One `clause(H, Body).` fact per object template, in source order. Object
// variables stay template variables.
Program synthesize_clause_facts(const Program& object);

using Signature = std::pair<std::string, std::size_t>;

// Wraps every head and literal L as functor(L), bare variables included.
// Literals whose name/arity is excluded stay untouched.
Program wrap(const Program& program, const std::string& functor,
             const std::set<Signature>& exclude = {{"clause", 2}});

// Parameters wrapped the same way, so they still meet the wrapped literals.
AtomSet wrap_params(const AtomSet& params, const std::string& functor,
                    const std::set<Signature>& exclude = {{"clause", 2}});

// Main templates followed by the builtin fragments and the clause facts of
// the object templates.
Program with_meta(const Program& program);

}  // namespace indsem::meta
