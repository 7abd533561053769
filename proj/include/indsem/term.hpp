#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace indsem {

// An expression: either a named variable or a symbol applied to an ordered
// argument list. Constants are compounds of arity 0 and integers are plain
// symbols whose name is their decimal rendering. Ground terms are the
// propositions of the universe; they double as first-order terms.
//
// Terms are immutable and share structure, so copies are cheap and safe to
// hand across threads.
class Term {
 public:
  static Term variable(std::string name);
  static Term compound(std::string functor, std::vector<Term> args = {});
  static Term constant(std::string name) { return compound(std::move(name)); }

  bool is_variable() const { return node_->variable; }
  bool is_compound() const { return !node_->variable; }
  bool is_ground() const { return node_->ground; }

  // Variable name, or functor symbol for compounds.
  const std::string& name() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  const Term& arg(std::size_t i) const { return node_->args[i]; }
  std::size_t hash() const { return node_->hash; }

  // True for a compound with the given functor and arity.
  bool is(std::string_view functor, std::size_t arity) const {
    return is_compound() && node_->args.size() == arity && node_->name == functor;
  }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend std::strong_ordering compare_terms(const Term& a, const Term& b);

 private:
  struct Node {
    bool variable = false;
    bool ground = true;
    std::size_t hash = 0;
    std::string name;
    std::vector<Term> args;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using AtomSet = std::set<Term>;
using TermHashSet = std::unordered_set<Term, TermHash>;

// Maps variable names to terms. Substitutions produced by `match` only
// carry ground images; `unify` may bind to non-ground terms.
using Substitution = std::map<std::string, Term>;

// Canonical total order. On ground terms: functor name by code point, then
// arity, then arguments left to right. Variables sort before compounds.
std::strong_ordering compare_terms(const Term& a, const Term& b);

// One-way matching of `pattern` against a ground `subject`, extending `seed`.
std::optional<Substitution> match(const Term& pattern, const Term& subject,
                                  Substitution seed = {});

// Replaces every mapped variable. Chains through bindings to non-ground
// images so that the result of `unify` can be applied directly.
Term apply_subst(const Term& t, const Substitution& s);

// Most general unifier of two terms (with occurs check), extending `seed`.
// The two terms share one variable namespace; rename apart first if needed.
std::optional<Substitution> unify(const Term& a, const Term& b, Substitution seed = {});

// Template-level overlap test: renames the variables of `b` apart from `a`
// before unifying.
bool unifiable(const Term& a, const Term& b);

// Appends `suffix` to every variable name.
Term rename_variables(const Term& t, const std::string& suffix);

void collect_variables(const Term& t, std::vector<std::string>& out);
bool occurs_symbol(const Term& t, const std::string& symbol);
std::size_t term_depth(const Term& t);

// Canonical text rendering; round-trips through the parser.
std::string to_string(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

// Prolog atom quoting: plain lowercase identifiers and digit strings are left
// bare, anything else is wrapped in single quotes with \ and ' escaped.
std::string quote_symbol(const std::string& name);

// Rendering with variables renamed by first occurrence (_0, _1, ...). Two
// terms yield the same key iff they are variants of each other.
std::string variant_key(const Term& t);

}  // namespace indsem
