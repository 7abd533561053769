#include "indsem/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace indsem {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->variable = true;
  node->ground = false;
  node->hash = mix(0x51ed27, std::hash<std::string>{}(name));
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  std::size_t h = mix(std::hash<std::string>{}(functor), args.size());
  for (const auto& a : args) {
    node->ground = node->ground && a.is_ground();
    h = mix(h, a.hash());
  }
  node->hash = h;
  node->name = std::move(functor);
  node->args = std::move(args);
  return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->variable != b.node_->variable ||
      a.node_->name != b.node_->name || a.node_->args.size() != b.node_->args.size())
    return false;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i)
    if (!(a.node_->args[i] == b.node_->args[i])) return false;
  return true;
}

std::strong_ordering compare_terms(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_variable() != b.is_variable())
    return a.is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (int c = a.name().compare(b.name()); c != 0)
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.arity() != b.arity()) return a.arity() <=> b.arity();
  for (std::size_t i = 0; i < a.arity(); ++i) {
    auto c = compare_terms(a.arg(i), b.arg(i));
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) { return compare_terms(a, b); }

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& s) {
  if (pattern.is_variable()) {
    auto [it, inserted] = s.try_emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (pattern.is_ground()) return pattern == subject;
  if (!subject.is_compound() || pattern.name() != subject.name() ||
      pattern.arity() != subject.arity())
    return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match_into(pattern.arg(i), subject.arg(i), s)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject, Substitution seed) {
  if (!match_into(pattern, subject, seed)) return std::nullopt;
  return seed;
}

Term apply_subst(const Term& t, const Substitution& s) {
  if (t.is_ground() || s.empty()) return t;
  if (t.is_variable()) {
    auto it = s.find(t.name());
    if (it == s.end()) return t;
    if (it->second.is_ground() || it->second == t) return it->second;
    return apply_subst(it->second, s);
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(apply_subst(a, s));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  return Term::compound(t.name(), std::move(args));
}

namespace {

// Follows variable bindings until reaching an unbound variable or compound.
Term walk(Term t, const Substitution& s) {
  while (t.is_variable()) {
    auto it = s.find(t.name());
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const std::string& var, const Term& t, const Substitution& s) {
  Term w = walk(t, s);
  if (w.is_variable()) return w.name() == var;
  if (w.is_ground()) return false;
  for (const auto& a : w.args())
    if (occurs(var, a, s)) return true;
  return false;
}

bool unify_into(const Term& a, const Term& b, Substitution& s) {
  Term x = walk(a, s);
  Term y = walk(b, s);
  if (x.is_variable() && y.is_variable() && x.name() == y.name()) return true;
  if (x.is_variable()) {
    if (occurs(x.name(), y, s)) return false;
    s.emplace(x.name(), y);
    return true;
  }
  if (y.is_variable()) {
    if (occurs(y.name(), x, s)) return false;
    s.emplace(y.name(), x);
    return true;
  }
  if (x.name() != y.name() || x.arity() != y.arity()) return false;
  if (x.is_ground() && y.is_ground()) return x == y;
  for (std::size_t i = 0; i < x.arity(); ++i)
    if (!unify_into(x.arg(i), y.arg(i), s)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b, Substitution seed) {
  if (!unify_into(a, b, seed)) return std::nullopt;
  return seed;
}

bool unifiable(const Term& a, const Term& b) {
  return unify(a, rename_variables(b, "'")).has_value();
}

Term rename_variables(const Term& t, const std::string& suffix) {
  if (t.is_ground()) return t;
  if (t.is_variable()) return Term::variable(t.name() + suffix);
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(rename_variables(a, suffix));
  return Term::compound(t.name(), std::move(args));
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}

bool occurs_symbol(const Term& t, const std::string& symbol) {
  if (t.is_variable()) return false;
  if (t.name() == symbol) return true;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs_symbol(a, symbol); });
}

std::size_t term_depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, term_depth(a));
  return d + 1;
}

std::string quote_symbol(const std::string& name) {
  auto is_plain = [&] {
    if (name.empty()) return false;
    if (std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isdigit(c); }))
      return true;
    if (!std::islower(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
      return c < 0x80 && (std::isalnum(c) || c == '_');
    });
  };
  if (is_plain()) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

namespace {

void render(const Term& t, std::string& out) {
  if (t.is_variable()) {
    out += t.name();
    return;
  }
  out += quote_symbol(t.name());
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    render(t.arg(i), out);
  }
  out += ')';
}

void render_variant(const Term& t, std::map<std::string, std::size_t>& names, std::string& out) {
  if (t.is_variable()) {
    auto [it, _] = names.try_emplace(t.name(), names.size());
    out += '_';
    out += std::to_string(it->second);
    return;
  }
  if (t.is_ground()) {
    render(t, out);
    return;
  }
  out += quote_symbol(t.name());
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    render_variant(t.arg(i), names, out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  render(t, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }

std::string variant_key(const Term& t) {
  std::map<std::string, std::size_t> names;
  std::string out;
  render_variant(t, names, out);
  return out;
}

}  // namespace indsem
