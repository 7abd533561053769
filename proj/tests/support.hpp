#pragma once

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "indsem/engine.hpp"
#include "indsem/oracle.hpp"
#include "indsem/parser.hpp"
#include "indsem/program.hpp"
#include "indsem/term.hpp"

namespace indsem::testing {

inline std::string corpus_path(const std::string& rel) {
  return std::string(INDSEM_CORPUS_DIR) + "/" + rel;
}

inline Program prog(std::string_view text) { return parse_program(text, "t.ind"); }
inline AtomSet atoms(std::string_view text) { return parse_paramset(text, "t.facts"); }
inline Term term(std::string_view text) { return parse_term(text); }

struct CorpusProgram {
  std::string name;
  Program program;
  AtomSet params;
};

// Corpus programs whose least set is finite and computable bottom-up.
inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names{
      "tc",           "tc_left",     "university", "reach",          "same_generation",
      "unreach",      "bachelor",    "three_strata", "two_strata",   "lone_neg",
      "truly_believes", "var_head",  "candidate",  "vanilla",        "even_odd",
      "blocked",      "empty",       "structured"};
  return names;
}

inline CorpusProgram load_corpus(const std::string& name) {
  CorpusProgram c{name, load_program(corpus_path(name + ".ind")), {}};
  std::string facts = corpus_path(name + ".facts");
  if (FILE* f = std::fopen(facts.c_str(), "r")) {
    std::fclose(f);
    c.params = load_paramset(facts);
  }
  return c;
}

inline std::vector<CorpusProgram> load_all_corpus() {
  std::vector<CorpusProgram> out;
  for (const auto& n : corpus_names()) out.push_back(load_corpus(n));
  return out;
}

// The pre-grounded reference over the engine's own output plus A.
inline std::vector<GroundRule> ground_over(const Program& p, const AtomSet& params,
                                           const AtomSet& model) {
  oracle::FiniteUniverse u{model};
  u.atoms.insert(params.begin(), params.end());
  return oracle::preground(p, u);
}

inline AtomSet oracle_model(const Program& p, const AtomSet& params, const AtomSet& model) {
  auto rules = ground_over(p, params, model);
  return p.has_negation() ? oracle::stratified_least_closed(rules, params)
                          : oracle::naive_least_closed(rules, params);
}

// Ground atoms worth asking about: the model and A, plus every head of a
// pre-grounded instance whether derivable or not.
inline AtomSet candidate_atoms(const Program& p, const AtomSet& params, const AtomSet& model) {
  AtomSet out = model;
  out.insert(params.begin(), params.end());
  for (const auto& r : ground_over(p, params, model)) out.insert(r.head);
  return out;
}

inline Program permuted(const Program& p, std::mt19937& rng) {
  Program out = p;
  std::shuffle(out.templates.begin(), out.templates.end(), rng);
  return out;
}

// Random terms over a small signature; `ground` forbids variables.
inline Term random_term(std::mt19937& rng, int depth, bool ground) {
  static const char* const constants[] = {"a", "b", "c", "1", "2", "nil"};
  static const char* const functors[] = {"f", "g", "p", "cons"};
  static const char* const vars[] = {"X", "Y", "Z"};
  std::uniform_int_distribution<int> pick(0, 9);
  int r = pick(rng);
  if (!ground && r < 2) return Term::variable(vars[rng() % 3]);
  if (depth <= 0 || r < 5) return Term::constant(constants[rng() % 6]);
  std::size_t arity = 1 + rng() % 3;
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(random_term(rng, depth - 1, ground));
  return Term::compound(functors[rng() % 4], std::move(args));
}

}  // namespace indsem::testing
