#include <doctest.h>

#include <random>

#include "indsem/term.hpp"
#include "support.hpp"

using namespace indsem;
using indsem::testing::term;

TEST_CASE("match binds pattern variables structurally") {
  auto s = match(term("p(X,Y)"), term("p(a,b)"));
  REQUIRE(s);
  CHECK(s->at("X") == term("a"));
  CHECK(s->at("Y") == term("b"));
}

TEST_CASE("match rejects inconsistent bindings") {
  CHECK_FALSE(match(term("p(X,X)"), term("p(a,b)")));
}

TEST_CASE("match respects the seed") {
  Substitution seed{{"X", term("g(b)")}};
  CHECK_FALSE(match(term("f(X)"), term("f(g(a))"), seed));
  CHECK(match(term("f(X)"), term("f(g(b))"), seed));
}

TEST_CASE("match fails on functor or arity mismatch") {
  CHECK_FALSE(match(term("p(X)"), term("q(a)")));
  CHECK_FALSE(match(term("p(X)"), term("p(a,b)")));
  CHECK(match(term("X"), term("p(a,b)"))->at("X") == term("p(a,b)"));
}

TEST_CASE("apply_subst") {
  Substitution s{{"X", term("1")}, {"Z", term("2")}};
  CHECK(apply_subst(term("tc(X,Z)"), s) == term("tc(1,2)"));
  CHECK(apply_subst(term("q"), {{"X", term("a")}}) == term("q"));
  CHECK(to_string(apply_subst(term("f(X,Y)"), {{"X", term("a")}})) == "f(a,Y)");
}

TEST_CASE("compare orders by name, then arity, then arguments") {
  CHECK(compare_terms(term("a"), term("b")) < 0);
  CHECK(compare_terms(term("f(a)"), term("f(a)")) == 0);
  CHECK(compare_terms(term("f(b)"), term("f(a,a)")) < 0);
  CHECK(compare_terms(term("f(a,b)"), term("f(a,c)")) < 0);
}

TEST_CASE("unify with occurs check") {
  auto s = unify(term("f(X,b)"), term("f(a,Y)"));
  REQUIRE(s);
  CHECK(apply_subst(term("f(X,Y)"), *s) == term("f(a,b)"));
  CHECK_FALSE(unify(term("X"), term("f(X)")));
  CHECK(unifiable(term("tc(X,Y)"), term("tc(1,X)")));
  CHECK_FALSE(unifiable(term("tc(X,X)"), term("tc(1,2)")));
}

TEST_CASE("printing quotes symbols that would not read back") {
  CHECK(to_string(term("'Hello world'")) == "'Hello world'");
  CHECK(to_string(term("f(a,'B')")) == "f(a,'B')");
  CHECK(to_string(term("','(a,b)")) == "','(a,b)");
  Term odd = Term::constant("it's a \\ b");
  CHECK(parse_term(to_string(odd)) == odd);
  CHECK(to_string(term("42")) == "42");
}

TEST_CASE("variant keys ignore variable names") {
  CHECK(variant_key(term("p(X,Y,X)")) == variant_key(term("p(A,B,A)")));
  CHECK(variant_key(term("p(X,Y)")) != variant_key(term("p(X,X)")));
}

TEST_CASE("property: match then apply reproduces the subject") {
  std::mt19937 rng(7);
  int matched = 0;
  for (int i = 0; i < 2000; ++i) {
    Term pattern = testing::random_term(rng, 3, false);
    Substitution s;
    std::vector<std::string> vars;
    collect_variables(pattern, vars);
    for (const auto& v : vars) s.insert_or_assign(v, testing::random_term(rng, 2, true));
    Term subject = apply_subst(pattern, s);
    REQUIRE(subject.is_ground());
    auto m = match(pattern, subject);
    REQUIRE(m);
    CHECK(apply_subst(pattern, *m) == subject);
    ++matched;
  }
  CHECK(matched == 2000);
}

TEST_CASE("property: compare is a total order consistent with equality") {
  std::mt19937 rng(11);
  std::vector<Term> ts;
  for (int i = 0; i < 200; ++i) ts.push_back(testing::random_term(rng, 3, true));
  for (const auto& a : ts)
    for (const auto& b : ts) {
      auto ab = compare_terms(a, b);
      auto ba = compare_terms(b, a);
      CHECK((ab == 0) == (a == b));
      CHECK((ab < 0) == (ba > 0));
    }
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 2 < ts.size(); ++i)
    if (ts[i] < ts[i + 1] && ts[i + 1] < ts[i + 2]) CHECK(ts[i] < ts[i + 2]);
}

TEST_CASE("property: printing and parsing round-trip") {
  std::mt19937 rng(13);
  for (int i = 0; i < 1000; ++i) {
    Term t = testing::random_term(rng, 4, false);
    std::string text = to_string(t);
    Term back = parse_term(text);
    CHECK(back == t);
    CHECK(to_string(back) == text);
  }
}
