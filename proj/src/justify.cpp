#include "indsem/justify.hpp"

#include <functional>
#include <map>

#include "indsem/components.hpp"
#include "indsem/engine.hpp"
#include "indsem/error.hpp"

namespace indsem {

namespace {

void collect_constants(const Term& t, AtomSet& out) {
  if (t.is_variable()) return;
  if (t.arity() == 0) out.insert(t);
  for (const auto& a : t.args()) collect_constants(a, out);
}

// Variables left free by a rule instance stand for arbitrary terms; any
// fixed constant of the program's language witnesses them.
Term pick_filler(const Program& program, const AtomSet& params) {
  AtomSet constants;
  for (const auto& r : program.templates) {
    collect_constants(r.head, constants);
    for (const auto& b : r.pos_body) collect_constants(b, constants);
    for (const auto& n : r.neg_body) collect_constants(n, constants);
  }
  for (const auto& p : params) collect_constants(p, constants);
  return constants.empty() ? Term::constant("a") : *constants.begin();
}

Term fill(const Term& t, const Term& filler) {
  if (t.is_ground()) return t;
  if (t.is_variable()) return filler;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(fill(a, filler));
  return Term::compound(t.name(), std::move(args));
}

void require_stratified(const Program& program) {
  if (!program.has_negation()) return;
  Stratification strat = stratify(program);
  if (!strat.stratified()) throw Error(ErrorKind::Unstratifiable, describe_cycle(program, strat));
}

}  // namespace

Prover::Prover(const Program& program, const AtomSet& params, SolverOptions options)
    : solver_(program, params, options), filler_(pick_filler(program, params)) {
  require_stratified(program);
}

std::optional<Justification> Prover::prove(const Term& goal) {
  if (goal.is("not", 1))
    throw Error(ErrorKind::NegativeGoal, "cannot justify a negative goal: " + to_string(goal));
  if (!goal.is_ground())
    throw Error(ErrorKind::Unsupported, "justification goals must be ground: " + to_string(goal));
  auto ref = solver_.find(goal);
  if (!ref) return std::nullopt;
  Justification out;
  AtomSet done;
  build(goal, *ref, done, out);
  return out;
}

void Prover::build(const Term& ground, AnswerRef ref, AtomSet& done, Justification& out) {
  if (done.count(ground)) return;
  const Answer& a = solver_.answer(ref);
  if (a.support.parameter) {
    done.insert(ground);
    out.steps.push_back({ground, std::nullopt});
    return;
  }
  auto theta = match(a.support.head, ground);
  if (!theta) throw std::logic_error("answer does not subsume " + to_string(ground));

  const AnswerSupport support = a.support;
  RuleWitness w{ground, {}, {}, solver_.program().templates[support.rule].loc};
  std::vector<Term> body;
  for (const auto& b : support.body) body.push_back(fill(apply_subst(b, *theta), filler_));
  for (std::size_t i = 0; i < body.size(); ++i) build(body[i], support.body_refs[i], done, out);
  if (done.count(ground)) return;
  w.body.insert(body.begin(), body.end());
  w.negs.insert(support.negs.begin(), support.negs.end());
  done.insert(ground);
  out.steps.push_back({ground, std::move(w)});
}

std::optional<Justification> prove(const Program& program, const AtomSet& params,
                                   const Term& goal, SolverOptions options) {
  return Prover(program, params, options).prove(goal);
}

namespace {

// Whether the witness is a ground instance of the template, reading body and
// negative literals as sets.
bool instance_of(const RuleTemplate& rule, const RuleWitness& w) {
  auto theta = match(rule.head, w.head);
  if (!theta) return false;
  std::vector<std::pair<const Term*, const AtomSet*>> lits;
  for (const auto& b : rule.pos_body) lits.emplace_back(&b, &w.body);
  for (const auto& n : rule.neg_body) lits.emplace_back(&n, &w.negs);

  std::vector<const Term*> chosen(lits.size(), nullptr);
  std::function<bool(std::size_t, const Substitution&)> assign = [&](std::size_t i,
                                                                     const Substitution& s) {
    if (i == lits.size()) {
      AtomSet body, negs;
      for (std::size_t k = 0; k < lits.size(); ++k)
        (lits[k].second == &w.body ? body : negs).insert(*chosen[k]);
      return body == w.body && negs == w.negs;
    }
    for (const auto& candidate : *lits[i].second) {
      if (auto next = match(*lits[i].first, candidate, s)) {
        chosen[i] = &candidate;
        if (assign(i + 1, *next)) return true;
      }
    }
    return false;
  };
  return assign(0, *theta);
}

}  // namespace

VerifyResult verify(const Program& program, const AtomSet& params, const Justification& j) {
  auto fail = [](std::size_t i, const std::string& why) {
    return VerifyResult{false, "step " + std::to_string(i + 1) + ": " + why};
  };
  if (j.steps.empty()) return {false, "empty justification"};

  std::optional<Stratification> strat;
  std::vector<std::size_t> stratum_of(program.templates.size(), 0);
  std::map<std::size_t, AtomSet> lower_params;
  if (program.has_negation()) {
    strat = stratify(program);
    if (!strat->stratified()) return {false, "program is not stratified"};
    for (std::size_t k = 0; k < strat->strata.size(); ++k)
      for (std::size_t idx : strat->strata[k]) stratum_of[idx] = k;
  }
  // Parameters seen by stratum k: A together with everything below it.
  auto params_for = [&](std::size_t k) -> const AtomSet& {
    auto it = lower_params.find(k);
    if (it != lower_params.end()) return it->second;
    Program below;
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t idx : strat->strata[s]) below.templates.push_back(program.templates[idx]);
    return lower_params.emplace(k, least_fixpoint(below, params).atoms).first->second;
  };

  AtomSet earlier;
  for (std::size_t i = 0; i < j.steps.size(); ++i) {
    const auto& step = j.steps[i];
    if (!step.proposition.is_ground()) return fail(i, "proposition is not ground");
    if (earlier.count(step.proposition))
      return fail(i, to_string(step.proposition) + " appears twice");
    if (step.is_parameter()) {
      if (!params.count(step.proposition))
        return fail(i, to_string(step.proposition) + " is not a parameter");
    } else {
      const RuleWitness& w = *step.rule;
      if (!(w.head == step.proposition)) return fail(i, "witness head differs from proposition");
      for (const auto& b : w.body)
        if (!earlier.count(b)) return fail(i, "body atom " + to_string(b) + " not justified earlier");
      bool matched = false;
      for (std::size_t r = 0; r < program.templates.size() && !matched; ++r) {
        if (!instance_of(program.templates[r], w)) continue;
        const AtomSet& blocked = strat ? params_for(stratum_of[r]) : params;
        matched = std::none_of(w.negs.begin(), w.negs.end(),
                               [&](const Term& n) { return blocked.count(n) != 0; });
      }
      if (!matched)
        return fail(i, "no rule instance of the program supports " +
                           to_string(step.proposition) + " with these conditions");
    }
    earlier.insert(step.proposition);
  }
  return {};
}

std::string format_justification(const Justification& j) {
  std::string out;
  for (std::size_t i = 0; i < j.steps.size(); ++i) {
    const auto& step = j.steps[i];
    out += std::to_string(i + 1) + ". " + to_string(step.proposition);
    if (step.is_parameter()) {
      out += "  [param]\n";
      continue;
    }
    out += "  :- ";
    if (step.rule->body.empty()) {
      out += "true";
    } else {
      bool first = true;
      for (const auto& b : step.rule->body) {
        if (!first) out += ", ";
        out += to_string(b);
        first = false;
      }
    }
    if (!step.rule->negs.empty()) {
      out += " ; not ";
      bool first = true;
      for (const auto& n : step.rule->negs) {
        if (!first) out += ", ";
        out += to_string(n);
        first = false;
      }
    }
    out += "  (" + to_string(step.rule->loc) + ")\n";
  }
  return out;
}

}  // namespace indsem
