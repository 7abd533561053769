#include "indsem/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "indsem/error.hpp"

namespace indsem::oracle {

namespace {

void proper_subterms(const Term& t, AtomSet& out) {
  for (const auto& a : t.args()) {
    if (a.is_ground()) out.insert(a);
    proper_subterms(a, out);
  }
}

void bare_variables(const RuleTemplate& r, std::vector<std::string>& out) {
  auto note = [&](const Term& t) {
    if (t.is_variable()) out.push_back(t.name());
  };
  note(r.head);
  for (const auto& b : r.pos_body) note(b);
  for (const auto& n : r.neg_body) note(n);
}

}  // namespace

std::vector<GroundRule> preground(const Program& program, const FiniteUniverse& universe,
                                  std::size_t max_instances) {
  AtomSet arg_domain;
  for (const auto& a : universe.atoms) proper_subterms(a, arg_domain);
  for (const auto& r : program.templates) {
    proper_subterms(r.head, arg_domain);
    for (const auto& b : r.pos_body) proper_subterms(b, arg_domain);
    for (const auto& n : r.neg_body) proper_subterms(n, arg_domain);
  }
  AtomSet prop_domain = arg_domain;
  prop_domain.insert(universe.atoms.begin(), universe.atoms.end());
  const std::vector<Term> args(arg_domain.begin(), arg_domain.end());
  const std::vector<Term> props(prop_domain.begin(), prop_domain.end());

  std::vector<GroundRule> out;
  for (const auto& r : program.templates) {
    std::vector<std::string> vars, bare;
    collect_variables(r.head, vars);
    for (const auto& b : r.pos_body) collect_variables(b, vars);
    for (const auto& n : r.neg_body) collect_variables(n, vars);
    bare_variables(r, bare);

    std::vector<const std::vector<Term>*> domains;
    std::size_t count = 1;
    for (const auto& v : vars) {
      bool prop = std::find(bare.begin(), bare.end(), v) != bare.end();
      domains.push_back(prop ? &props : &args);
      count *= domains.back()->size();
      if (count > max_instances) break;
    }
    if (count == 0) continue;
    if (count > max_instances || out.size() + count > max_instances)
      throw Error(ErrorKind::UniverseTooLarge,
                  to_string(r.loc) + ": pre-grounding exceeds " + std::to_string(max_instances) +
                      " instances");

    std::vector<std::size_t> odometer(vars.size(), 0);
    while (true) {
      Substitution s;
      for (std::size_t i = 0; i < vars.size(); ++i) s.emplace(vars[i], (*domains[i])[odometer[i]]);
      GroundRule g{apply_subst(r.head, s), {}, {}};
      for (const auto& b : r.pos_body) g.body.insert(apply_subst(b, s));
      for (const auto& n : r.neg_body) g.negs.insert(apply_subst(n, s));
      out.push_back(std::move(g));

      std::size_t i = 0;
      while (i < vars.size() && ++odometer[i] == domains[i]->size()) odometer[i++] = 0;
      if (i == vars.size()) break;
    }
  }
  return out;
}

AtomSet naive_least_closed(const std::vector<GroundRule>& rules, const AtomSet& params) {
  AtomSet s = params;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules) {
      if (s.count(r.head)) continue;
      bool body = std::all_of(r.body.begin(), r.body.end(),
                              [&](const Term& b) { return s.count(b) != 0; });
      bool negs = std::none_of(r.negs.begin(), r.negs.end(),
                               [&](const Term& n) { return params.count(n) != 0; });
      if (body && negs) {
        s.insert(r.head);
        changed = true;
      }
    }
  }
  return s;
}

AtomSet stratified_least_closed(const std::vector<GroundRule>& rules, const AtomSet& params) {
  std::map<Term, std::size_t> id;
  std::vector<Term> atoms;
  auto node = [&](const Term& t) {
    auto [it, inserted] = id.emplace(t, atoms.size());
    if (inserted) atoms.push_back(t);
    return it->second;
  };
  struct Edge {
    std::size_t to;
    bool negative;
  };
  std::vector<std::vector<Edge>> adj;
  auto grow = [&] { adj.resize(atoms.size()); };
  for (const auto& r : rules) {
    std::size_t h = node(r.head);
    for (const auto& b : r.body) node(b);
    for (const auto& n : r.negs) node(n);
    grow();
    for (const auto& b : r.body) adj[h].push_back({id[b], false});
    for (const auto& n : r.negs) adj[h].push_back({id[n], true});
  }
  grow();

  // Tarjan; components come out dependencies first.
  const std::size_t n = atoms.size();
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, none), low(n, 0), comp(n, none);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& e : adj[v]) {
      if (index[e.to] == none) {
        visit(e.to);
        low[v] = std::min(low[v], low[e.to]);
      } else if (on_stack[e.to]) {
        low[v] = std::min(low[v], index[e.to]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = components;
      } while (w != v);
      ++components;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == none) visit(v);

  for (std::size_t v = 0; v < n; ++v)
    for (const auto& e : adj[v])
      if (e.negative && comp[v] == comp[e.to])
        throw Error(ErrorKind::Unstratifiable,
                    "ground atom " + to_string(atoms[v]) + " depends negatively on its own component");

  std::vector<std::vector<GroundRule>> by_comp(components);
  for (const auto& r : rules) by_comp[comp[id[r.head]]].push_back(r);
  AtomSet s = params;
  for (std::size_t c = 0; c < components; ++c)
    if (!by_comp[c].empty()) s = naive_least_closed(by_comp[c], s);
  return s;
}

bool minimality_check(const std::vector<GroundRule>& rules, const AtomSet& params,
                      const AtomSet& candidate, std::size_t max_free) {
  if (!std::includes(candidate.begin(), candidate.end(), params.begin(), params.end()))
    return false;
  std::vector<Term> free;
  std::set_difference(candidate.begin(), candidate.end(), params.begin(), params.end(),
                      std::back_inserter(free));
  if (free.size() > max_free)
    throw Error(ErrorKind::UniverseTooLarge,
                std::to_string(free.size()) + " candidate atoms exceed the subset enumeration cap");

  // Subsets of the candidate as bitmasks over the free atoms; parameters are
  // always present.
  struct Compiled {
    bool body_possible = true;
    std::uint32_t body = 0;
    std::uint32_t negs = 0;
    bool neg_in_params = false;
    bool head_inside = true;
    std::uint32_t head = 0;
  };
  auto bit = [&](const Term& t) -> std::optional<std::uint32_t> {
    auto it = std::lower_bound(free.begin(), free.end(), t);
    if (it == free.end() || !(*it == t)) return std::nullopt;
    return std::uint32_t{1} << (it - free.begin());
  };
  std::vector<Compiled> compiled;
  for (const auto& r : rules) {
    Compiled c;
    for (const auto& b : r.body) {
      if (params.count(b)) continue;
      if (auto m = bit(b)) c.body |= *m;
      else c.body_possible = false;
    }
    for (const auto& n : r.negs) {
      if (params.count(n)) c.neg_in_params = true;
      else if (auto m = bit(n)) c.negs |= *m;
    }
    if (params.count(r.head)) {
      c.head = 0;
    } else if (auto m = bit(r.head)) {
      c.head = *m;
    } else {
      c.head_inside = false;
    }
    if (c.body_possible && !c.neg_in_params) compiled.push_back(c);
  }
  auto closed = [&](std::uint32_t s) {
    for (const auto& c : compiled) {
      if ((c.body & s) != c.body || (c.negs & s) != 0) continue;
      if (!c.head_inside || (c.head & s) != c.head) return false;
    }
    return true;
  };
  const std::uint32_t full = free.empty() ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << free.size()) - 1);
  if (!closed(full)) return false;
  for (std::uint32_t s = 0; s < full; ++s)
    if (closed(s)) return false;
  return true;
}

}  // namespace indsem::oracle
