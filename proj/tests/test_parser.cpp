#include <doctest.h>

#include "indsem/error.hpp"
#include "indsem/parser.hpp"
#include "support.hpp"

using namespace indsem;
using indsem::testing::term;

namespace {

std::vector<std::string> strs(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(to_string(t));
  return out;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Unsupported;
}

}  // namespace

TEST_CASE("a rule with a positive body") {
  Program p = parse_program("tc(X,Y) :- edge(X,Y).");
  REQUIRE(p.templates.size() == 1);
  CHECK(to_string(p.templates[0].head) == "tc(X,Y)");
  CHECK(strs(p.templates[0].pos_body) == std::vector<std::string>{"edge(X,Y)"});
  CHECK(p.templates[0].neg_body.empty());
}

TEST_CASE("negative literals are split from positive ones, order kept") {
  Program p = parse_program("p :- q, not(r), s, not(t).");
  const auto& r = p.templates.at(0);
  CHECK(r.head == term("p"));
  CHECK(strs(r.pos_body) == std::vector<std::string>{"q", "s"});
  CHECK(strs(r.neg_body) == std::vector<std::string>{"r", "t"});
}

TEST_CASE("variable heads and bare variable literals") {
  Program p = parse_program("H :- clause(H,Body), Body.");
  const auto& r = p.templates.at(0);
  CHECK(r.head.is_variable());
  CHECK(r.has_variable_head());
  REQUIRE(r.pos_body.size() == 2);
  CHECK(to_string(r.pos_body[0]) == "clause(H,Body)");
  CHECK(r.pos_body[1].is_variable());
}

TEST_CASE("source lines are recorded per clause") {
  Program p = parse_program("% header\na.\n\nb :-\n  a.\n", "f.ind");
  REQUIRE(p.templates.size() == 2);
  CHECK(to_string(p.templates[0].loc) == "f.ind:2");
  CHECK(to_string(p.templates[1].loc) == "f.ind:4");
}

TEST_CASE("parenthesized conjunctions flatten in bodies and nest in terms") {
  Program p = parse_program("p :- (q, r), s.\nclause(p, (q, r)).");
  CHECK(p.templates[0].pos_body.size() == 3);
  CHECK(to_string(p.templates[1].head) == "clause(p,','(q,r))");
}

TEST_CASE("#object routes later clauses to the object program") {
  Program p = parse_program("H :- clause(H,B), B.\n#object\ne(1,2).\ntc(X,Y) :- e(X,Y).\n");
  CHECK(p.templates.size() == 1);
  CHECK(p.object_templates.size() == 2);
}

TEST_CASE("anonymous variables are distinct") {
  Program p = parse_program("p :- q(_, _).");
  const Term& body = p.templates[0].pos_body[0];
  CHECK(body.arg(0).is_variable());
  CHECK_FALSE(body.arg(0) == body.arg(1));
}

TEST_CASE("parameter sets") {
  CHECK(parse_paramset("edge(1,2). edge(2,3).") == AtomSet{term("edge(1,2)"), term("edge(2,3)")});
  CHECK(parse_paramset("").empty());
  CHECK(kind_of([] { parse_paramset("edge(X,1)."); }) == ErrorKind::NonGroundParameter);
  CHECK(kind_of([] { parse_paramset("p :- q."); }) == ErrorKind::Syntax);
}

TEST_CASE("queries") {
  CHECK(to_string(parse_query("tc(1,Y)")) == "tc(1,Y)");
  CHECK(to_string(parse_query("tc(1,Y).")) == "tc(1,Y)");
  Term c = parse_query("met_graduation_reqs");
  CHECK(c.is_ground());
  CHECK(c.arity() == 0);
  CHECK(parse_query("not(p)").is("not", 1));
}

TEST_CASE("syntax errors") {
  CHECK(kind_of([] { parse_program("p :- ."); }) == ErrorKind::Syntax);
  CHECK(kind_of([] { parse_program("p(a"); }) == ErrorKind::Syntax);
  CHECK(kind_of([] { parse_program("p :- not(a, b)."); }) == ErrorKind::Syntax);
  CHECK(kind_of([] { parse_program("p"); }) == ErrorKind::Syntax);
  CHECK(kind_of([] { load_program("/nonexistent/x.ind"); }) == ErrorKind::Io);
}

TEST_CASE("property: printed programs parse back to the same program") {
  for (const auto& name : testing::corpus_names()) {
    Program p = testing::load_corpus(name).program;
    std::string text = to_string(p);
    CHECK(to_string(parse_program(text)) == text);
  }
}
