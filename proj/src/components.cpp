#include "indsem/components.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <tuple>

#include "indsem/error.hpp"

namespace indsem {

namespace {

bool matches_any(const AtomSet& templates, const Term& ground) {
  return std::any_of(templates.begin(), templates.end(),
                     [&](const Term& t) { return match(t, ground).has_value(); });
}

std::vector<std::vector<std::size_t>> tarjan(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  const std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> sccs;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (index[w] == unvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> scc;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        scc.push_back(w);
      } while (w != v);
      std::sort(scc.begin(), scc.end());
      sccs.push_back(std::move(scc));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == unvisited) visit(v);
  return sccs;
}

// Shortest path from `from` to `to` using only nodes of one component.
std::vector<std::size_t> path_within(const std::vector<std::vector<std::size_t>>& adj,
                                     const std::vector<std::size_t>& comp_of, std::size_t from,
                                     std::size_t to) {
  std::vector<std::size_t> parent(adj.size(), static_cast<std::size_t>(-1));
  std::deque<std::size_t> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (std::size_t w : adj[v])
      if (comp_of[w] == comp_of[from] && parent[w] == static_cast<std::size_t>(-1)) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

bool ComponentSignature::in_heads(const Term& g) const { return matches_any(heads, g); }
bool ComponentSignature::in_bodies(const Term& g) const { return matches_any(bodies, g); }
bool ComponentSignature::in_negs(const Term& g) const { return matches_any(negs, g); }

ComponentSignature signature(const Program& program) {
  ComponentSignature sig;
  for (const auto& r : program.templates) {
    sig.heads.insert(r.head);
    sig.bodies.insert(r.pos_body.begin(), r.pos_body.end());
    sig.negs.insert(r.neg_body.begin(), r.neg_body.end());
  }
  return sig;
}

std::vector<AllowabilityViolation> check_allowable(const Program& program, const AtomSet& params) {
  std::vector<AllowabilityViolation> out;
  for (const auto& atom : params)
    for (const auto& r : program.templates)
      if (match(r.head, atom)) out.push_back({atom, r.head, r.loc});
  return out;
}

Stratification stratify(const Program& program) {
  const auto& rules = program.templates;
  const std::size_t n = rules.size();
  Stratification out;
  std::vector<std::vector<std::size_t>> adj(n);

  auto add_edge = [&](std::size_t from, std::size_t to, bool negative, bool overlap) {
    out.edges.push_back({from, to, negative, overlap});
    if (std::find(adj[from].begin(), adj[from].end(), to) == adj[from].end())
      adj[from].push_back(to);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Term& head = rules[j].head;
      if (std::any_of(rules[i].pos_body.begin(), rules[i].pos_body.end(),
                      [&](const Term& b) { return unifiable(b, head); }))
        add_edge(i, j, false, false);
      if (std::any_of(rules[i].neg_body.begin(), rules[i].neg_body.end(),
                      [&](const Term& b) { return unifiable(b, head); }))
        add_edge(i, j, true, false);
      if (i != j && unifiable(rules[i].head, head)) add_edge(i, j, false, true);
    }

  auto sccs = tarjan(adj);
  std::vector<std::size_t> comp_of(n);
  for (std::size_t c = 0; c < sccs.size(); ++c)
    for (std::size_t v : sccs[c]) comp_of[v] = c;

  for (const auto& e : out.edges) {
    if (e.negative && comp_of[e.from] == comp_of[e.to]) {
      std::vector<std::size_t> cycle{e.from};
      auto back = path_within(adj, comp_of, e.to, e.from);
      cycle.insert(cycle.end(), back.begin(), back.end());
      out.negative_cycle = std::move(cycle);
      return out;
    }
  }

  // Dependencies first; ties broken by the earliest source position.
  const std::size_t m = sccs.size();
  std::vector<std::vector<std::size_t>> users(m);
  std::vector<std::size_t> pending(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<std::size_t> deps;
    for (std::size_t v : sccs[c])
      for (std::size_t w : adj[v])
        if (comp_of[w] != c) deps.push_back(comp_of[w]);
    std::sort(deps.begin(), deps.end());
    deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
    pending[c] = deps.size();
    for (std::size_t d : deps) users[d].push_back(c);
  }
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;
  auto key_of = [&](std::size_t c) {
    std::size_t line = static_cast<std::size_t>(-1);
    for (std::size_t v : sccs[c]) line = std::min(line, rules[v].loc.line);
    return Key{line, sccs[c].front(), c};
  };
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (std::size_t c = 0; c < m; ++c)
    if (pending[c] == 0) ready.push(key_of(c));
  while (!ready.empty()) {
    std::size_t c = std::get<2>(ready.top());
    ready.pop();
    out.strata.push_back(sccs[c]);
    for (std::size_t u : users[c])
      if (--pending[u] == 0) ready.push(key_of(u));
  }
  return out;
}

std::string describe_cycle(const Program& program, const Stratification& strat) {
  std::string out = "negative cycle: ";
  for (std::size_t i = 0; i < strat.negative_cycle.size(); ++i) {
    if (i) out += " -> ";
    out += to_string(program.templates[strat.negative_cycle[i]].loc);
  }
  return out;
}

std::vector<UnifiablePair> composition_conflicts(const Program& upper, const Program& lower) {
  std::vector<UnifiablePair> out;
  for (const auto& u : upper.templates)
    for (const auto& l : lower.templates) {
      auto check = [&](const Term& t) {
        if (unifiable(u.head, t)) out.push_back({u.head, u.loc, t, l.loc});
      };
      check(l.head);
      for (const auto& b : l.pos_body) check(b);
      for (const auto& b : l.neg_body) check(b);
    }
  return out;
}

ModelSet compose(const Program& upper, const Program& lower, const AtomSet& params, bool verify,
                 const EvalLimits& limits) {
  auto conflicts = composition_conflicts(upper, lower);
  if (!conflicts.empty()) {
    std::string msg = "composition precondition violated:";
    for (const auto& c : conflicts)
      msg += "\n  " + to_string(c.upper) + " (" + to_string(c.upper_loc) + ") unifies with " +
             to_string(c.lower) + " (" + to_string(c.lower_loc) + ")";
    throw Error(ErrorKind::CompositionPrecondition, msg);
  }
  Program both = concat(upper, lower);
  for (const Program* p : std::initializer_list<const Program*>{&lower, &both}) {
    auto violations = check_allowable(*p, params);
    if (!violations.empty())
      throw Error(ErrorKind::NotAllowable, "parameter " + to_string(violations.front().atom) +
                                               " unifies with head " +
                                               to_string(violations.front().head) + " (" +
                                               to_string(violations.front().loc) + ")");
  }
  ModelSet below = least_fixpoint(lower, params, limits);
  ModelSet above = least_fixpoint(upper, below.atoms, limits);
  above.derivation_count += below.derivation_count;
  if (verify) {
    ModelSet whole = least_fixpoint(both, params, limits);
    if (whole.atoms != above.atoms)
      throw Error(ErrorKind::CompositionMismatch,
                  "chained evaluation differs from evaluating the union");
  }
  return above;
}

bool satisfies(const AtomSet& model, const Program& program, const EvalLimits& limits) {
  ComponentSignature sig = signature(program);
  AtomSet params;
  for (const auto& m : model)
    if ((sig.in_bodies(m) || sig.in_negs(m)) && !sig.in_heads(m)) params.insert(m);
  ModelSet derived = least_fixpoint(program, params, limits);
  AtomSet lhs, rhs;
  for (const auto& f : derived.atoms)
    if (sig.in_heads(f)) lhs.insert(f);
  for (const auto& m : model)
    if (sig.in_heads(m)) rhs.insert(m);
  return lhs == rhs;
}

}  // namespace indsem
