#include "indsem/tabling.hpp"

#include <algorithm>
#include <deque>

#include "indsem/error.hpp"

namespace indsem {

struct TabledSolver::Table {
  Term call = Term::constant("true");
  std::vector<Answer> answers;
  std::unordered_set<std::string> keys;
  std::vector<std::size_t> deps;
  bool complete = false;
};

struct TabledSolver::RuleUse {
  std::size_t index;
  Term head;
  std::vector<Term> pos;
  std::vector<Term> neg;
  SourceLoc loc;
};

namespace {

std::string bucket_key(const Term& t) { return t.name() + "/" + std::to_string(t.arity()); }

// Replaces subterms at depth `limit` and below with fresh variables.
Term generalize(const Term& t, std::size_t depth, std::size_t limit, std::size_t& fresh) {
  if (t.is_variable() || t.arity() == 0) return t;
  if (depth >= limit) return Term::variable("_D" + std::to_string(fresh++));
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(generalize(a, depth + 1, limit, fresh));
  return Term::compound(t.name(), std::move(args));
}

// Renames all variables of the given terms, jointly, to prefix0, prefix1, ...
void canonicalize(std::vector<Term*> terms, const std::string& prefix) {
  std::vector<std::string> names;
  for (Term* t : terms) collect_variables(*t, names);
  if (names.empty()) return;
  // Two passes through names no source term can contain, since apply_subst
  // follows chains and the targets may already occur in the input.
  Substitution to_tmp, to_final;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string tmp = "\x01" + std::to_string(i);
    to_tmp.emplace(names[i], Term::variable(tmp));
    to_final.emplace(tmp, Term::variable(prefix + std::to_string(i)));
  }
  for (Term* t : terms) *t = apply_subst(apply_subst(*t, to_tmp), to_final);
}

}  // namespace

TabledSolver::TabledSolver(Program program, AtomSet params, SolverOptions options)
    : program_(std::move(program)), params_(std::move(params)), options_(options) {
  for (const auto& p : params_) param_buckets_[bucket_key(p)].push_back(p);
}

TabledSolver::~TabledSolver() = default;

std::size_t TabledSolver::table_count() const { return tables_.size(); }

const Answer& TabledSolver::answer(AnswerRef ref) const {
  return tables_.at(ref.table)->answers.at(ref.index);
}

std::string TabledSolver::fresh_suffix() { return "#" + std::to_string(rename_counter_++); }

std::size_t TabledSolver::table_for(const Term& goal) {
  std::size_t fresh = 0;
  Term call = generalize(goal, 1, options_.call_depth, fresh);
  canonicalize({&call}, "_C");
  std::string key = variant_key(call);
  if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;

  if (tables_.size() >= options_.max_tables)
    throw Error(ErrorKind::ResourceLimit,
                "table count exceeds " + std::to_string(options_.max_tables));
  if (depth_ >= options_.max_depth)
    throw Error(ErrorKind::ResourceLimit,
                "call nesting exceeds depth " + std::to_string(options_.max_depth));

  std::size_t t = tables_.size();
  auto table = std::make_unique<Table>();
  table->call = call;
  tables_.push_back(std::move(table));
  by_key_.emplace(std::move(key), t);

  if (auto it = param_buckets_.find(bucket_key(call)); it != param_buckets_.end()) {
    for (const auto& p : it->second) {
      if (!unify(call, p)) continue;
      Answer a{p, {}};
      a.support.parameter = true;
      a.support.head = p;
      tables_[t]->keys.insert(to_string(p));
      tables_[t]->answers.push_back(std::move(a));
      ++total_answers_;
    }
  }

  ++depth_;
  try {
    evaluate(t);
  } catch (...) {
    --depth_;
    throw;
  }
  --depth_;
  return t;
}

void TabledSolver::evaluate(std::size_t t) {
  evaluating_.insert(t);
  const Term call = tables_[t]->call;
  for (std::size_t i = 0; i < program_.templates.size(); ++i) {
    const RuleTemplate& rule = program_.templates[i];
    const std::string suffix = fresh_suffix();
    RuleUse use{i, rename_variables(rule.head, suffix), {}, {}, rule.loc};
    for (const auto& b : rule.pos_body) use.pos.push_back(rename_variables(b, suffix));
    for (const auto& n : rule.neg_body) use.neg.push_back(rename_variables(n, suffix));
    auto theta = unify(use.head, call);
    if (!theta) continue;
    std::vector<AnswerRef> refs;
    solve_body(t, use, 0, *theta, refs);
  }
  evaluating_.erase(t);
}

void TabledSolver::solve_body(std::size_t t, const RuleUse& use, std::size_t j,
                              const Substitution& theta, std::vector<AnswerRef>& refs) {
  if (j == use.pos.size()) {
    std::vector<Term> negs;
    for (const auto& n : use.neg) {
      Term g = apply_subst(n, theta);
      if (!g.is_ground())
        throw Error(ErrorKind::NonGroundNegation,
                    to_string(use.loc) + ": negative literal not(" + to_string(g) +
                        ") is not ground when reached");
      if (provable(g)) return;
      negs.push_back(std::move(g));
    }
    add_answer(t, use, theta, refs, std::move(negs));
    return;
  }
  Term lit = apply_subst(use.pos[j], theta);
  if (lit.is_variable())
    throw Error(ErrorKind::UncallableLiteral, to_string(use.loc) +
                                                  ": body literal is an unbound variable "
                                                  "when reached");
  std::size_t u = table_for(lit);
  auto& deps = tables_[t]->deps;
  if (std::find(deps.begin(), deps.end(), u) == deps.end()) deps.push_back(u);

  for (std::size_t k = 0; k < tables_[u]->answers.size(); ++k) {
    Term a = rename_variables(tables_[u]->answers[k].term, fresh_suffix());
    auto next = unify(lit, a, theta);
    if (!next) continue;
    refs.push_back({u, k});
    solve_body(t, use, j + 1, *next, refs);
    refs.pop_back();
  }
}

void TabledSolver::add_answer(std::size_t t, const RuleUse& use, const Substitution& theta,
                              const std::vector<AnswerRef>& refs, std::vector<Term> negs) {
  Answer a{apply_subst(use.head, theta), {}};
  a.support.rule = use.index;
  for (const auto& b : use.pos) a.support.body.push_back(apply_subst(b, theta));
  a.support.head = a.term;
  std::vector<Term*> all{&a.term, &a.support.head};
  for (auto& b : a.support.body) all.push_back(&b);
  canonicalize(all, "_A");

  Table& table = *tables_[t];
  if (!table.keys.insert(variant_key(a.term)).second) return;
  if (total_answers_ >= options_.max_answers)
    throw Error(ErrorKind::ResourceLimit,
                "answer count exceeds " + std::to_string(options_.max_answers));
  a.support.body_refs = refs;
  a.support.negs = std::move(negs);
  table.answers.push_back(std::move(a));
  ++total_answers_;
}

void TabledSolver::complete(std::size_t root) {
  while (true) {
    std::vector<std::size_t> region;
    std::unordered_set<std::size_t> seen{root};
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      if (tables_[x]->complete) continue;
      region.push_back(x);
      for (std::size_t d : tables_[x]->deps)
        if (seen.insert(d).second) queue.push_back(d);
    }
    if (region.empty()) return;
    for (std::size_t x : region)
      if (evaluating_.count(x))
        throw Error(ErrorKind::Unstratifiable,
                    "negative literal depends on " + to_string(tables_[x]->call) +
                        ", which is still being evaluated");
    std::sort(region.begin(), region.end());

    const std::size_t answers_before = total_answers_;
    const std::size_t tables_before = tables_.size();
    for (std::size_t x : region) evaluate(x);
    if (total_answers_ == answers_before && tables_.size() == tables_before) {
      for (std::size_t x : region) tables_[x]->complete = true;
      return;
    }
  }
}

bool TabledSolver::provable(const Term& ground) {
  if (params_.count(ground)) return true;
  return find(ground).has_value();
}

std::optional<AnswerRef> TabledSolver::find(const Term& ground) {
  std::size_t u = table_for(ground);
  complete(u);
  const auto& answers = tables_[u]->answers;
  for (std::size_t k = 0; k < answers.size(); ++k)
    if (match(answers[k].term, ground)) return AnswerRef{u, k};
  return std::nullopt;
}

std::vector<Term> TabledSolver::solve(const Term& goal) {
  if (goal.is_variable())
    throw Error(ErrorKind::UncallableLiteral, "cannot solve an unbound variable goal");
  std::size_t u = table_for(goal);
  complete(u);
  std::vector<Term> out;
  std::unordered_set<std::string> seen;
  for (std::size_t k = 0; k < tables_[u]->answers.size(); ++k) {
    Term a = rename_variables(tables_[u]->answers[k].term, fresh_suffix());
    auto s = unify(goal, a);
    if (!s) continue;
    Term inst = apply_subst(goal, *s);
    std::vector<Term*> one{&inst};
    canonicalize(one, "_");
    if (seen.insert(variant_key(inst)).second) out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace indsem
