#include "indsem/engine.hpp"

#include <functional>
#include <string>
#include <unordered_map>

#include "indsem/components.hpp"

namespace indsem {

namespace {

std::string bucket_key(const Term& t) { return t.name() + "/" + std::to_string(t.arity()); }

class AtomIndex {
 public:
  bool insert(const Term& t) {
    if (!members_.insert(t).second) return false;
    buckets_[bucket_key(t)].push_back(t);
    return true;
  }

  bool contains(const Term& t) const { return members_.count(t) != 0; }
  std::size_t size() const { return members_.size(); }

  const std::vector<Term>& bucket(const Term& pattern) const {
    static const std::vector<Term> empty;
    auto it = buckets_.find(bucket_key(pattern));
    return it == buckets_.end() ? empty : it->second;
  }

 private:
  TermHashSet members_;
  std::unordered_map<std::string, std::vector<Term>> buckets_;
};

// Enumerates the ground instances of one template that fire against `full`.
// When `delta_at` names a literal position, that literal draws only from
// `delta`; this is the semi-naive restriction.
class RuleFiring {
 public:
  RuleFiring(const RuleTemplate& rule, const AtomIndex& full, const AtomIndex* delta,
             std::size_t delta_at, const AtomSet& params,
             const std::function<void(const Term&)>& emit)
      : rule_(rule), full_(full), delta_(delta), delta_at_(delta_at), params_(params),
        emit_(emit) {}

  void run() { step(0, {}); }

 private:
  void step(std::size_t j, const Substitution& theta) {
    if (j == rule_.pos_body.size()) {
      finish(theta);
      return;
    }
    Term lit = apply_subst(rule_.pos_body[j], theta);
    const AtomIndex& src = (delta_ && j == delta_at_) ? *delta_ : full_;
    if (lit.is_variable())
      throw Error(ErrorKind::UncallableLiteral,
                  to_string(rule_.loc) + ": body literal " + lit.name() +
                      " is an unbound variable when reached");
    if (lit.is_ground()) {
      if (src.contains(lit)) step(j + 1, theta);
      return;
    }
    const auto& bucket = src.bucket(lit);
    for (std::size_t k = 0; k < bucket.size(); ++k)
      if (auto s = match(lit, bucket[k], theta)) step(j + 1, *s);
  }

  void finish(const Substitution& theta) {
    for (const auto& n : rule_.neg_body) {
      Term g = apply_subst(n, theta);
      if (!g.is_ground())
        throw Error(ErrorKind::NonGroundNegation,
                    to_string(rule_.loc) + ": negative literal not(" + to_string(g) +
                        ") is not ground after matching the positive body");
      if (params_.count(g)) return;
    }
    Term head = apply_subst(rule_.head, theta);
    if (!head.is_ground())
      throw Error(ErrorKind::NonGroundHead, to_string(rule_.loc) + ": head " + to_string(head) +
                                                " is not ground after matching the body");
    emit_(head);
  }

  const RuleTemplate& rule_;
  const AtomIndex& full_;
  const AtomIndex* delta_;
  std::size_t delta_at_;
  const AtomSet& params_;
  const std::function<void(const Term&)>& emit_;
};

void check_variable_heads(const Program& program, const AtomSet& params) {
  if (!program.has_variable_head()) return;
  if (!params.empty())
    throw Error(ErrorKind::NotAllowable,
                "a program with a variable rule head admits only the empty parameter set");
  if (program.has_negation())
    throw Error(ErrorKind::Unstratifiable,
                "a program with a variable rule head cannot be stratified");
}

}  // namespace

ModelSet apply_T(const Program& program, const AtomSet& params, const AtomSet& current) {
  AtomIndex source;
  for (const auto& a : params) source.insert(a);
  for (const auto& a : current) source.insert(a);
  ModelSet out{params, 1};
  std::function<void(const Term&)> emit = [&](const Term& h) { out.atoms.insert(h); };
  for (const auto& rule : program.templates)
    RuleFiring(rule, source, nullptr, 0, params, emit).run();
  return out;
}

ModelSet component_fixpoint(const Program& program, const AtomSet& params,
                            const EvalLimits& limits) {
  check_variable_heads(program, params);
  AtomIndex full;
  std::vector<Term> order;
  auto snapshot = [&](std::size_t rounds) {
    ModelSet m;
    m.atoms.insert(order.begin(), order.end());
    m.derivation_count = rounds;
    return m;
  };
  for (const auto& a : params)
    if (full.insert(a)) order.push_back(a);

  std::vector<Term> fresh;
  std::function<void(const Term&)> emit = [&](const Term& h) {
    if (!full.contains(h)) fresh.push_back(h);
  };

  // Round 1 is T(∅): every template, matched against A.
  for (const auto& rule : program.templates)
    RuleFiring(rule, full, nullptr, 0, params, emit).run();
  std::size_t rounds = 1;

  while (true) {
    AtomIndex delta;
    for (const auto& h : fresh)
      if (!full.contains(h) && delta.insert(h)) {
        full.insert(h);
        order.push_back(h);
      }
    fresh.clear();
    if (full.size() > limits.max_atoms)
      throw ResourceLimitError("derived atom count exceeds " + std::to_string(limits.max_atoms),
                               snapshot(rounds));
    if (delta.size() == 0) break;
    if (rounds >= limits.max_iterations)
      throw ResourceLimitError(
          "no fixpoint after " + std::to_string(limits.max_iterations) + " iterations",
          snapshot(rounds));
    ++rounds;
    for (const auto& rule : program.templates)
      for (std::size_t i = 0; i < rule.pos_body.size(); ++i)
        RuleFiring(rule, full, &delta, i, params, emit).run();
  }
  return snapshot(rounds);
}

ModelSet least_fixpoint(const Program& program, const AtomSet& params, const EvalLimits& limits) {
  check_variable_heads(program, params);
  if (!program.has_negation()) return component_fixpoint(program, params, limits);

  Stratification strat = stratify(program);
  if (!strat.stratified())
    throw Error(ErrorKind::Unstratifiable, describe_cycle(program, strat));

  ModelSet acc{params, 0};
  for (const auto& stratum : strat.strata) {
    Program part;
    for (std::size_t idx : stratum) part.templates.push_back(program.templates[idx]);
    try {
      ModelSet m = component_fixpoint(part, acc.atoms, limits);
      acc.derivation_count += m.derivation_count;
      acc.atoms = std::move(m.atoms);
    } catch (const ResourceLimitError& e) {
      ModelSet partial = e.partial();
      partial.derivation_count += acc.derivation_count;
      throw ResourceLimitError(e.what(), std::move(partial));
    }
  }
  return acc;
}

std::vector<Substitution> answers_in(const ModelSet& model, const Term& q) {
  std::vector<Substitution> out;
  for (const auto& atom : model.atoms)
    if (auto s = match(q, atom)) out.push_back(std::move(*s));
  return out;
}

std::vector<Substitution> query(const Program& program, const AtomSet& params, const Term& q,
                                const EvalLimits& limits) {
  if (q.is("not", 1))
    throw Error(ErrorKind::NegativeQuery, "negative queries are not supported: " + to_string(q));
  return answers_in(least_fixpoint(program, params, limits), q);
}

}  // namespace indsem
