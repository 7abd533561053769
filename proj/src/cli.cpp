#include "indsem/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include "indsem/components.hpp"
#include "indsem/engine.hpp"
#include "indsem/error.hpp"
#include "indsem/justify.hpp"
#include "indsem/meta.hpp"
#include "indsem/oracle.hpp"
#include "indsem/parser.hpp"
#include "indsem/tabling.hpp"

namespace indsem {

namespace {

struct Options {
  std::vector<std::string> programs;
  std::vector<std::string> facts;
  std::string query;
  std::string wrap;
  std::vector<std::string> exclude_wrap;
  bool meta = false;
  bool oracle = false;
  bool verify = false;
  std::size_t max_atoms = EvalLimits{}.max_atoms;
  std::size_t max_iters = EvalLimits{}.max_iterations;
  std::size_t max_depth = SolverOptions{}.max_depth;
};

struct Loaded {
  Program program;
  AtomSet params;
};

EvalLimits limits_of(const Options& o) { return {o.max_atoms, o.max_iters}; }

SolverOptions solver_options_of(const Options& o) {
  SolverOptions s;
  s.max_depth = o.max_depth;
  s.max_answers = o.max_atoms;
  return s;
}

std::set<meta::Signature> exclusions(const Options& o) {
  std::set<meta::Signature> out{{"clause", 2}};
  for (const auto& spec : o.exclude_wrap) {
    auto slash = spec.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == spec.size())
      throw Error(ErrorKind::Syntax, "--exclude-wrap expects name/arity, got '" + spec + "'");
    std::size_t arity = 0;
    try {
      arity = std::stoul(spec.substr(slash + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Syntax, "--exclude-wrap expects name/arity, got '" + spec + "'");
    }
    out.emplace(spec.substr(0, slash), arity);
  }
  return out;
}

AtomSet load_facts(const Options& o) {
  AtomSet params;
  for (const auto& f : o.facts) {
    AtomSet more = load_paramset(f);
    params.insert(more.begin(), more.end());
  }
  return params;
}

// Applies --meta and --wrap, in that order, to a loaded program and its facts.
Loaded prepare(Program program, AtomSet params, const Options& o) {
  if (o.meta) program = meta::with_meta(program);
  if (!o.wrap.empty()) {
    auto exclude = exclusions(o);
    program = meta::wrap(program, o.wrap, exclude);
    params = meta::wrap_params(params, o.wrap, exclude);
  }
  return {std::move(program), std::move(params)};
}

Loaded load_all(const Options& o) {
  Program program;
  for (const auto& p : o.programs) program = concat(program, load_program(p));
  return prepare(std::move(program), load_facts(o), o);
}

std::vector<std::string> query_variables(const Term& q) {
  std::vector<std::string> vars;
  collect_variables(q, vars);
  std::erase_if(vars, [](const std::string& v) { return v.starts_with("_"); });
  return vars;
}

void print_answers(const Term& q, const std::vector<Substitution>& answers, std::ostream& out) {
  auto vars = query_variables(q);
  if (answers.empty()) {
    out << "false.\n";
    return;
  }
  if (vars.empty()) {
    out << "true.\n";
    return;
  }
  std::set<std::string> seen;
  for (const auto& s : answers) {
    std::string line;
    for (const auto& v : vars) {
      if (!line.empty()) line += ", ";
      auto it = s.find(v);
      line += v + " = " + (it == s.end() ? v : to_string(apply_subst(it->second, s)));
    }
    if (seen.insert(line).second) out << line << "\n";
  }
}

std::vector<Substitution> answers_top_down(TabledSolver& solver, const Term& q) {
  std::vector<Substitution> out;
  for (const auto& inst : solver.solve(q))
    if (auto s = match(q, inst)) out.push_back(*s);
  return out;
}

// Engine output compared against the pre-grounded reference over the same
// finite universe. Prints the symmetric difference on mismatch.
bool oracle_agrees(const Loaded& l, const ModelSet& model, std::ostream& err) {
  oracle::FiniteUniverse u{model.atoms};
  u.atoms.insert(l.params.begin(), l.params.end());
  auto rules = oracle::preground(l.program, u);
  AtomSet ref = l.program.has_negation() ? oracle::stratified_least_closed(rules, l.params)
                                         : oracle::naive_least_closed(rules, l.params);
  if (ref == model.atoms) return true;
  for (const auto& a : model.atoms)
    if (!ref.count(a)) err << "engine only: " << a << "\n";
  for (const auto& a : ref)
    if (!model.atoms.count(a)) err << "oracle only: " << a << "\n";
  return false;
}

int cmd_model(const Options& o, std::ostream& out, std::ostream& err) {
  Loaded l = load_all(o);
  try {
    ModelSet m = least_fixpoint(l.program, l.params, limits_of(o));
    out << dump_atoms(m.atoms);
    if (o.oracle && !oracle_agrees(l, m, err)) {
      err << "error: oracle mismatch\n";
      return 1;
    }
    return 0;
  } catch (const ResourceLimitError& e) {
    out << dump_atoms(e.partial().atoms);
    throw;
  }
}

int cmd_query(const Options& o, std::ostream& out) {
  Loaded l = load_all(o);
  Term q = parse_query(o.query);
  if (q.is("not", 1)) throw Error(ErrorKind::NegativeQuery, "queries must be positive: " + to_string(q));
  if (o.meta) {
    TabledSolver solver(l.program, l.params, solver_options_of(o));
    print_answers(q, answers_top_down(solver, q), out);
  } else {
    print_answers(q, query(l.program, l.params, q, limits_of(o)), out);
  }
  return 0;
}

int explain(Prover& prover, const Term& goal, std::ostream& out) {
  auto j = prover.prove(goal);
  if (!j) {
    out << "false.\n";
    return 1;
  }
  out << format_justification(*j);
  return 0;
}

int cmd_explain(const Options& o, std::ostream& out) {
  Loaded l = load_all(o);
  Prover prover(l.program, l.params, solver_options_of(o));
  return explain(prover, parse_query(o.query), out);
}

std::string locations(const Program& p, const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t i : idx) {
    if (!s.empty()) s += ", ";
    s += to_string(p.templates[i].loc);
  }
  return s;
}

int cmd_strata(const Options& o, std::ostream& out, std::ostream& err) {
  Loaded l = load_all(o);
  Stratification s = stratify(l.program);
  if (!s.stratified()) {
    err << "error: unstratifiable: " << describe_cycle(l.program, s) << "\n";
    return exit_code(ErrorKind::Unstratifiable);
  }
  for (std::size_t k = 0; k < s.strata.size(); ++k)
    out << "stratum " << k << ": " << locations(l.program, s.strata[k]) << "\n";
  return 0;
}

void report_conflicts(const std::vector<UnifiablePair>& pairs, std::ostream& out) {
  for (const auto& c : pairs)
    out << "  " << to_string(c.upper_loc) << ": " << c.upper << " unifies with "
        << to_string(c.lower_loc) << ": " << c.lower << "\n";
}

int cmd_check(const Options& o, std::ostream& out) {
  bool ok = true;
  Loaded l = load_all(o);

  auto violations = check_allowable(l.program, l.params);
  out << "allowable: " << (violations.empty() ? "ok" : "FAIL") << "\n";
  for (const auto& v : violations)
    out << "  parameter " << v.atom << " matches head " << v.head << " at " << to_string(v.loc)
        << "\n";
  ok = ok && violations.empty();

  Stratification s = stratify(l.program);
  if (s.stratified()) {
    out << "stratified: ok (" << s.strata.size() << " strata)\n";
  } else {
    out << "stratified: FAIL\n  " << describe_cycle(l.program, s) << "\n";
    ok = false;
  }

  // With two program files the first is checked as composed over the
  // second; otherwise every stratum over each stratum below it.
  std::vector<UnifiablePair> conflicts;
  if (o.programs.size() == 2) {
    Loaded upper = prepare(load_program(o.programs[0]), {}, o);
    Loaded lower = prepare(load_program(o.programs[1]), {}, o);
    conflicts = composition_conflicts(upper.program, lower.program);
  } else if (s.stratified()) {
    for (std::size_t hi = 1; hi < s.strata.size(); ++hi)
      for (std::size_t lo = 0; lo < hi; ++lo) {
        Program up, down;
        for (std::size_t i : s.strata[hi]) up.templates.push_back(l.program.templates[i]);
        for (std::size_t i : s.strata[lo]) down.templates.push_back(l.program.templates[i]);
        auto more = composition_conflicts(up, down);
        conflicts.insert(conflicts.end(), more.begin(), more.end());
      }
  }
  out << "composition: " << (conflicts.empty() ? "ok" : "FAIL") << "\n";
  report_conflicts(conflicts, out);
  ok = ok && conflicts.empty();
  return ok ? 0 : 1;
}

int cmd_compose(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.programs.size() != 2) {
    err << "error: compose takes exactly two programs: upper then lower\n";
    return 2;
  }
  AtomSet facts = load_facts(o);
  Loaded upper = prepare(load_program(o.programs[0]), facts, o);
  Loaded lower = prepare(load_program(o.programs[1]), facts, o);
  try {
    ModelSet m = compose(upper.program, lower.program, lower.params, o.verify, limits_of(o));
    out << dump_atoms(m.atoms);
    return 0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CompositionPrecondition) throw;
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

std::string trim(std::string s) {
  auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
  return s;
}

int cmd_repl(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  Loaded l = load_all(o);
  std::optional<ModelSet> model;
  std::optional<Prover> prover;
  std::optional<TabledSolver> solver;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.starts_with("%")) continue;
    if (line == "halt." || line == "halt") break;
    try {
      if (line.starts_with("?-")) {
        Term q = parse_query(line.substr(2));
        if (q.is("not", 1))
          throw Error(ErrorKind::NegativeQuery, "queries must be positive: " + to_string(q));
        if (o.meta) {
          if (!solver) solver.emplace(l.program, l.params, solver_options_of(o));
          print_answers(q, answers_top_down(*solver, q), out);
        } else {
          if (!model) model = least_fixpoint(l.program, l.params, limits_of(o));
          print_answers(q, answers_in(*model, q), out);
        }
      } else if (line.starts_with("explain ")) {
        if (!prover) prover.emplace(l.program, l.params, solver_options_of(o));
        explain(*prover, parse_query(line.substr(8)), out);
      } else {
        err << "error: expected '?- <query>.' or 'explain <term>.'\n";
      }
    } catch (const Error& e) {
      err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    }
  }
  return 0;
}

void add_common(CLI::App* cmd, Options& o, bool needs_query) {
  cmd->add_option("programs", o.programs, "Program files")->required()->check(CLI::ExistingFile);
  cmd->add_option("--facts", o.facts, "Parameter file (repeatable)")->check(CLI::ExistingFile);
  if (needs_query) cmd->add_option("-q,--query", o.query, "Query term")->required();
  cmd->add_option("--wrap", o.wrap, "Wrap every literal in this functor");
  cmd->add_option("--exclude-wrap", o.exclude_wrap, "name/arity left unwrapped (repeatable)");
  cmd->add_flag("--meta", o.meta, "Add builtin rules, call/1 and clause/2 facts");
  cmd->add_option("--max-atoms", o.max_atoms, "Derived atom cap");
  cmd->add_option("--max-iters", o.max_iters, "Iteration cap");
  cmd->add_option("--max-depth", o.max_depth, "Top-down nesting cap");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Least-set evaluation of parameterized inductive definitions", "indsem"};
  app.require_subcommand(1);
  Options o;

  auto* model = app.add_subcommand("model", "Print the least set, sorted");
  add_common(model, o, false);
  model->add_flag("--oracle", o.oracle, "Cross-check against the pre-grounded reference");
  auto* query_cmd = app.add_subcommand("query", "Answer a query against the least set");
  add_common(query_cmd, o, true);
  auto* explain_cmd = app.add_subcommand("explain", "Print a justification for a ground goal");
  add_common(explain_cmd, o, true);
  auto* strata = app.add_subcommand("strata", "Print the stratification");
  add_common(strata, o, false);
  auto* check = app.add_subcommand("check", "Check allowability, stratification and composition");
  add_common(check, o, false);
  auto* compose_cmd = app.add_subcommand("compose", "Evaluate upper over the least set of lower");
  add_common(compose_cmd, o, false);
  compose_cmd->add_flag("--verify", o.verify, "Compare against evaluating the union");
  auto* repl = app.add_subcommand("repl", "Read '?- q.' and 'explain g.' lines");
  add_common(repl, o, false);
  repl->get_option("programs")->required(false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*model) return cmd_model(o, out, err);
    if (*query_cmd) return cmd_query(o, out);
    if (*explain_cmd) return cmd_explain(o, out);
    if (*strata) return cmd_strata(o, out, err);
    if (*check) return cmd_check(o, out);
    if (*compose_cmd) return cmd_compose(o, out, err);
    return cmd_repl(o, in, out, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace indsem
