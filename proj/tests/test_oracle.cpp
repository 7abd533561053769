#include <doctest.h>

#include "indsem/engine.hpp"
#include "indsem/error.hpp"
#include "indsem/oracle.hpp"
#include "support.hpp"

using namespace indsem;
using namespace indsem::oracle;
using indsem::testing::atoms;
using indsem::testing::prog;
using indsem::testing::term;

namespace {

GroundRule rule(const char* head, const char* body = "", const char* negs = "") {
  return {term(head), atoms(body), atoms(negs)};
}

}  // namespace

TEST_CASE("naive closure") {
  CHECK(naive_least_closed({rule("p", "q.")}, atoms("q.")) == atoms("q. p."));
  CHECK(naive_least_closed({rule("p", "", "q.")}, {}) == atoms("p."));
  CHECK(naive_least_closed({rule("p", "", "q.")}, atoms("q.")) == atoms("q."));
}

TEST_CASE("naive closure of pre-grounded tc matches the engine") {
  Program tc = prog("tc(X,Y) :- edge(X,Y).\ntc(X,Y) :- edge(X,Z), tc(Z,Y).\n");
  AtomSet a = atoms("edge(1,2). edge(2,3).");
  FiniteUniverse u{atoms("edge(1,2). edge(2,3). edge(3,3).")};
  CHECK(naive_least_closed(preground(tc, u), a) == least_fixpoint(tc, a).atoms);
}

TEST_CASE("the literal closure and the stratified closure differ on derived negation") {
  std::vector<GroundRule> rules{rule("q"), rule("p", "", "q.")};
  CHECK(naive_least_closed(rules, {}) == atoms("q. p."));
  CHECK(stratified_least_closed(rules, {}) == atoms("q."));
  CHECK_THROWS_AS(stratified_least_closed({rule("p", "", "p.")}, {}), Error);
}

TEST_CASE("minimality") {
  std::vector<GroundRule> rules{rule("p", "q."), rule("r", "p.")};
  AtomSet a = atoms("q.");
  AtomSet least = naive_least_closed(rules, a);
  CHECK(minimality_check(rules, a, least));
  AtomSet bigger = least;
  bigger.insert(term("s"));
  CHECK_FALSE(minimality_check(rules, a, bigger));
  CHECK_FALSE(minimality_check(rules, a, atoms("q. p.")));
  CHECK_FALSE(minimality_check(rules, a, atoms("p. r.")));
  AtomSet many;
  for (int i = 0; i < 21; ++i) many.insert(Term::compound("x", {Term::constant(std::to_string(i))}));
  CHECK_THROWS_AS(minimality_check({}, {}, many), Error);
}

TEST_CASE("pre-grounding") {
  Program tc = prog("tc(X,Y) :- edge(X,Y).\ntc(X,Y) :- edge(X,Z), tc(Z,Y).\n");
  CHECK(preground(tc, {atoms("edge(1,2). edge(2,1).")}).size() == 12);

  auto call = preground(prog("call(X) :- X."), {atoms("p.")});
  REQUIRE(call.size() == 1);
  CHECK(call[0].head == term("call(p)"));
  CHECK(call[0].body == atoms("p."));
  CHECK(call[0].negs.empty());

  auto fact = preground(prog("q."), {});
  REQUIRE(fact.size() == 1);
  CHECK(fact[0].head == term("q"));
  CHECK(fact[0].body.empty());

  try {
    preground(tc, {atoms("edge(1,2). edge(2,3). edge(3,4).")}, 10);
    FAIL("expected the cap to trip");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UniverseTooLarge);
  }
}

TEST_CASE("property: the engine agrees with the pre-grounded reference") {
  for (const auto& c : testing::load_all_corpus()) {
    CAPTURE(c.name);
    AtomSet m = least_fixpoint(c.program, c.params).atoms;
    CHECK(testing::oracle_model(c.program, c.params, m) == m);
  }
}

TEST_CASE("property: reference outputs are minimal on small universes") {
  int checked = 0;
  for (const auto& c : testing::load_all_corpus()) {
    if (c.program.has_negation()) continue;
    CAPTURE(c.name);
    AtomSet m = least_fixpoint(c.program, c.params).atoms;
    auto rules = testing::ground_over(c.program, c.params, m);
    AtomSet ref = naive_least_closed(rules, c.params);
    if (ref.size() - c.params.size() > 20) continue;
    CHECK(minimality_check(rules, c.params, ref));
    ++checked;
  }
  CHECK(checked >= 5);
}
