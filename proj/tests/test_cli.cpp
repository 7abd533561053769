#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "indsem/cli.hpp"
#include "support.hpp"

using indsem::testing::corpus_path;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = indsem::run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string c(const std::string& rel) { return corpus_path(rel); }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("query prints one substitution per line") {
  auto r = run({"query", c("tc.ind"), "--facts", c("g.facts"), "-q", "tc(1,Y)"});
  CHECK(r.code == 0);
  CHECK(r.out == "Y = 2\nY = 3\n");
  CHECK(run({"query", c("tc.ind"), "--facts", c("g.facts"), "-q", "tc(X,Y)"}).out ==
        "X = 1, Y = 2\nX = 1, Y = 3\nX = 2, Y = 3\n");
  CHECK(run({"query", c("tc.ind"), "--facts", c("g.facts"), "-q", "tc(1,3)."}).out == "true.\n");
  CHECK(run({"query", c("tc.ind"), "--facts", c("g.facts"), "-q", "tc(3,1)"}).out == "false.\n");
  CHECK(run({"query", c("tc.ind"), "--facts", c("g.facts"), "-q", "tc(3,Y)"}).out == "false.\n");
  CHECK(run({"query", c("tc.ind"), "-q", "not(tc(1,2))"}).code == 1);
}

TEST_CASE("facts files are unioned") {
  auto r = run({"query", c("tc.ind"), "--facts", c("g.facts"), "--facts", c("tc.facts"), "-q",
                "edge(X,Y)"});
  CHECK(r.out == "X = 1, Y = 2\nX = 2, Y = 3\nX = 3, Y = 1\nX = 3, Y = 4\n");
}

TEST_CASE("an unstratifiable program is reported with its cycle") {
  auto r = run({"strata", c("notloop.ind")});
  CHECK(r.code == 1);
  CHECK(r.err.find("negative cycle") != std::string::npos);
  CHECK(r.err.find("notloop.ind:1") != std::string::npos);
  CHECK(run({"model", c("selfneg.ind")}).code == 1);
}

TEST_CASE("strata listing") {
  auto r = run({"strata", c("two_strata.ind")});
  CHECK(r.code == 0);
  CHECK(r.out == "stratum 0: " + c("two_strata.ind") + ":1\nstratum 1: " + c("two_strata.ind") + ":2\n");
}

TEST_CASE("a program without rules dumps its facts") {
  auto r = run({"model", c("empty.ind"), "--facts", c("empty.facts")});
  CHECK(r.code == 0);
  CHECK(r.out == indsem::dump_atoms(indsem::load_paramset(c("empty.facts"))));
}

TEST_CASE("model with the oracle cross-check") {
  auto r = run({"model", c("unreach.ind"), "--facts", c("unreach.facts"), "--oracle"});
  CHECK(r.code == 0);
  CHECK(r.out.find("unreach(c).") != std::string::npos);
}

TEST_CASE("explain prints numbered steps") {
  auto r = run({"explain", c("tc.ind"), "--facts", c("g.facts"), "-q", "tc(1,3)"});
  CHECK(r.code == 0);
  std::string loc = c("tc.ind");
  CHECK(r.out == "1. edge(1,2)  [param]\n2. edge(2,3)  [param]\n3. tc(2,3)  :- edge(2,3)  (" + loc +
                     ":2)\n4. tc(1,3)  :- edge(1,2), tc(2,3)  (" + loc + ":3)\n");
  auto neg = run({"explain", c("bachelor.ind"), "--facts", c("bachelor.facts"), "-q", "bachelor(tom)"});
  CHECK(neg.out.find("; not married(tom)") != std::string::npos);
  CHECK(run({"explain", c("tc.ind"), "--facts", c("g.facts"), "-q", "tc(3,1)"}).code == 1);
}

TEST_CASE("exit codes by error class") {
  CHECK(run({"model", c("broken.ind")}).code == 2);
  CHECK(run({"model", c("does_not_exist.ind")}).code == 2);
  CHECK(run({"model"}).code == 2);
  CHECK(run({"frobnicate", c("tc.ind")}).code == 2);
  CHECK(run({"model", c("tc.ind"), "--facts", c("broken.ind")}).code == 2);
  CHECK(run({"model", c("var_head.ind"), "--facts", c("g.facts")}).code == 1);
  CHECK(run({"model", c("call.ind")}).code == 1);
  auto capped = run({"model", c("nat.ind"), "--max-atoms", "50"});
  CHECK(capped.code == 3);
  CHECK(capped.out.find("nat(zero).") != std::string::npos);
  CHECK(run({"model", c("nat.ind"), "--max-iters", "5"}).code == 3);
}

TEST_CASE("wrap and meta modes") {
  auto w = run({"query", c("tc.ind"), "--facts", c("g.facts"), "--wrap", "holds", "-q", "holds(tc(1,Y))"});
  CHECK(w.out == "Y = 2\nY = 3\n");
  auto ex = run({"model", c("tc.ind"), "--facts", c("g.facts"), "--wrap", "holds", "--exclude-wrap", "edge/2"});
  CHECK(ex.out.find("edge(1,2).") != std::string::npos);
  CHECK(ex.out.find("holds(tc(1,3)).") != std::string::npos);
  CHECK(run({"model", c("tc.ind"), "--wrap", "tc"}).code == 1);
  CHECK(run({"model", c("tc.ind"), "--wrap", "h", "--exclude-wrap", "edge"}).code == 2);

  auto m = run({"query", c("meta/tc_object.ind"), "--meta", "-q", "tc(1,X)"});
  CHECK(m.code == 0);
  CHECK(m.out == "X = 2\nX = 3\nX = 4\n");
  CHECK(run({"query", c("call.ind"), "--meta", "-q", "call(r)"}).out == "true.\n");
}

TEST_CASE("check and compose") {
  CHECK(run({"check", c("tc.ind"), "--facts", c("g.facts")}).code == 0);
  auto bad = run({"check", c("tc.ind"), "--facts", c("g.facts"), "--facts", c("tc.facts")});
  CHECK(bad.code == 0);
  auto notallowed = run({"check", c("var_head.ind"), "--facts", c("g.facts")});
  CHECK(notallowed.code == 1);
  CHECK(notallowed.out.find("allowable: FAIL") != std::string::npos);
  auto unstrat = run({"check", c("selfneg.ind")});
  CHECK(unstrat.code == 1);
  CHECK(unstrat.out.find("stratified: FAIL") != std::string::npos);
  auto pair = run({"check", c("compose/bad_upper.ind"), c("compose/bad_lower.ind")});
  CHECK(pair.code == 1);
  CHECK(pair.out.find("composition: FAIL") != std::string::npos);

  auto composed = run({"compose", c("compose/p1_upper.ind"), c("compose/p1_lower.ind"), "--facts",
                       c("compose/p1.facts"), "--verify"});
  CHECK(composed.code == 0);
  CHECK(composed.out.find("tc(3,1).") != std::string::npos);
  auto rejected = run({"compose", c("compose/bad_upper.ind"), c("compose/bad_lower.ind")});
  CHECK(rejected.code == 1);
  CHECK(rejected.err.find("bad_upper.ind:1") != std::string::npos);
  CHECK(run({"compose", c("tc.ind")}).code == 2);
}

TEST_CASE("repl answers queries and explanations line by line") {
  auto r = run({"repl", c("tc.ind"), "--facts", c("g.facts")},
               "?- tc(1,Y).\n\nexplain edge(1,2).\n?- tc(3,3).\nbogus\n?- not(p).\nhalt.\n?- tc(1,2).\n");
  CHECK(r.code == 0);
  CHECK(r.out == "Y = 2\nY = 3\n1. edge(1,2)  [param]\nfalse.\n");
  CHECK(r.err.find("expected") != std::string::npos);
  CHECK(r.err.find("NegativeQuery") != std::string::npos);
  CHECK(run({"repl"}, "?- p.\n").out == "false.\n");
}

TEST_CASE("model dumps are byte-identical across runs and template orders") {
  std::mt19937 rng(23);
  auto tmp = std::filesystem::temp_directory_path() / "indsem_cli_perm.ind";
  for (const auto& name : {"tc", "unreach", "three_strata", "structured"}) {
    std::string facts = c(std::string(name) + ".facts");
    auto base = run({"model", c(std::string(name) + ".ind"), "--facts", facts});
    REQUIRE(base.code == 0);
    CHECK(run({"model", c(std::string(name) + ".ind"), "--facts", facts}).out == base.out);
    auto p = indsem::load_program(c(std::string(name) + ".ind"));
    for (int i = 0; i < 5; ++i) {
      std::ofstream(tmp) << indsem::to_string(indsem::testing::permuted(p, rng));
      CHECK(run({"model", tmp.string(), "--facts", facts}).out == base.out);
    }
  }
  std::filesystem::remove(tmp);
  CHECK(slurp(c("g.facts")).size() > 0);
}
