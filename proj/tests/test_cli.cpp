#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

// End-to-end runs of the command-line tool; SHIFTEQ_CLI_PATH is injected
// by the build.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s)
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  return q + "'";
}

RunResult run_cli(const std::vector<std::string>& args) {
  static int counter = 0;
  const std::string out_path =
      "/tmp/shifteq_cli_out_" + std::to_string(counter++) + ".txt";
  std::string cmd = std::string(SHIFTEQ_CLI_PATH);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " > " + out_path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  res.out = buf.str();
  std::remove(out_path.c_str());
  return res;
}

const std::string kQ51 =
    R"({"vertices":["1","2"],"arrows":[{"id":"u","src":"2","dst":"1"},)"
    R"({"id":"v","src":"1","dst":"2"},{"id":"w","src":"1","dst":"1"}]})";

}  // namespace

TEST_CASE("cli: verified witness exits 0") {
  RunResult r = run_cli({"sse", "verify", "--a", "[[1,1],[1,1]]", "--b",
                         "[[2]]", "--l", "[[1],[1]]", "--r", "[[1,1]]"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"ok\":true") != std::string::npos);
}

TEST_CASE("cli: corrupted witness exits 1 and names the entry") {
  RunResult r = run_cli({"sse", "verify", "--a", "[[1,1],[1,1]]", "--b",
                         "[[2]]", "--l", "[[1],[0]]", "--r", "[[1,1]]"});
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("\"equality\":\"A=LR\"") != std::string::npos);
  CHECK(r.out.find("\"row\":1") != std::string::npos);
}

TEST_CASE("cli: exhausted search exits 2") {
  RunResult r = run_cli({"sse", "search", "--a", "[[2]]", "--b", "[[3]]"});
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("exhausted bounds") != std::string::npos);
}

TEST_CASE("cli: malformed JSON exits 3") {
  RunResult r = run_cli({"quiver", "show", "{\"vertices\": ["});
  CHECK(r.exit_code == 3);
  CHECK(r.out.empty());  // errors go to stderr only
}

TEST_CASE("cli: unknown subcommand exits 3") {
  RunResult r = run_cli({"frobnicate"});
  CHECK(r.exit_code == 3);
}

TEST_CASE("cli: invariants report exit codes") {
  RunResult consistent =
      run_cli({"invariants", "report", "[[1,3],[2,1]]", "[[1,6],[1,1]]",
               "--pmax", "3"});
  CHECK(consistent.exit_code == 0);
  CHECK(consistent.out.find("\"verdict\":\"consistent\"") != std::string::npos);

  RunResult distinguished =
      run_cli({"invariants", "report", "[[2]]", "[[3]]"});
  CHECK(distinguished.exit_code == 1);
  CHECK(distinguished.out.find("distinguished") != std::string::npos);
}

TEST_CASE("cli: byte-identical output across runs") {
  std::vector<std::string> argv{"transform", "edge", kQ51, "--format", "dot"};
  RunResult a = run_cli(argv);
  RunResult b = run_cli(argv);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("cli: seed determines random modules") {
  RunResult a = run_cli({"module", "random", "--quiver", kQ51, "-N", "3",
                         "--seed", "9", "--max-dim", "2"});
  RunResult b = run_cli({"module", "random", "--quiver", kQ51, "-N", "3",
                         "--seed", "9", "--max-dim", "2"});
  RunResult c = run_cli({"module", "random", "--quiver", kQ51, "-N", "3",
                         "--seed", "10", "--max-dim", "2"});
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
}

TEST_CASE("cli: certificate checker accepts and rejects") {
  const std::string cert =
      R"({"kind":"sse-chain","steps":[{"L":[[1],[1]],"R":[[1,1]]}]})";
  RunResult good = run_cli({"sse", "check-cert", "--a", "[[1,1],[1,1]]",
                            "--b", "[[2]]", cert});
  CHECK(good.exit_code == 0);

  const std::string bad =
      R"({"kind":"sse-chain","steps":[{"L":[[1],[1]],"R":[[1,0]]}]})";
  RunResult broken = run_cli({"sse", "check-cert", "--a", "[[1,1],[1,1]]",
                              "--b", "[[2]]", bad});
  CHECK(broken.exit_code == 1);

  const std::string malformed = R"({"kind":"sse-chain","steps":[{"L":[[1]]}]})";
  RunResult reject = run_cli({"sse", "check-cert", "--a", "[[1]]", "--b",
                              "[[1]]", malformed});
  CHECK(reject.exit_code == 3);

  const std::string se =
      R"({"kind":"se-witness","L":[[1],[1]],"R":[[1,1]],"lag":1})";
  RunResult se_ok = run_cli({"sse", "check-cert", "--a", "[[1,1],[1,1]]",
                             "--b", "[[2]]", se});
  CHECK(se_ok.exit_code == 0);
}

TEST_CASE("cli: transform pipeline matches worked values") {
  RunResult lr = run_cli({"transform", "split-lr", kQ51});
  CHECK(lr.out ==
        "{\"L\":[[1,0,1],[0,1,0]],\"R\":[[0,1],[1,0],[1,0]]}\n");

  RunResult power = run_cli({"transform", "power", kQ51, "-l", "2"});
  CHECK(power.exit_code == 0);
  CHECK(power.out.find("\"vertices\":[\"v1\",\"v2\"]") != std::string::npos);

  RunResult split = run_cli({"transform", "in-split", kQ51, "--vertex", "1",
                             "--classes", R"([["w"],["u"]])"});
  CHECK(split.exit_code == 0);
  CHECK(split.out.find("\"L\":[[1,1,0],[0,0,1]]") != std::string::npos);

  RunResult bad_split = run_cli({"transform", "in-split", kQ51, "--vertex",
                                 "1", "--classes", R"([["w"]])"});
  CHECK(bad_split.exit_code == 3);
}

TEST_CASE("cli: text format") {
  RunResult r = run_cli({"quiver", "show", kQ51, "--format", "text"});
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "vertices: 1 2\n"
        "arrows:\n"
        "  u: 2 -> 1\n"
        "  v: 1 -> 2\n"
        "  w: 1 -> 1\n");

  RunResult bad = run_cli({"quiver", "show", kQ51, "--format", "yaml"});
  CHECK(bad.exit_code == 3);
}

TEST_CASE("cli: quiver paths with endpoints") {
  RunResult r = run_cli({"quiver", "paths", kQ51, "-n", "2", "--from", "1",
                         "--to", "1"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"count\":2") != std::string::npos);
  CHECK(r.out.find("\"matrix_count\":2") != std::string::npos);
}

TEST_CASE("cli: module tau and eta checks through files") {
  RunResult quiver = run_cli({"quiver", "from-matrix", "[[1,1],[1,0]]"});
  REQUIRE(quiver.exit_code == 0);
  const std::string qpath = "/tmp/shifteq_test_qlr.json";
  {
    std::ofstream out(qpath);
    out << quiver.out;
  }
  RunResult mod = run_cli({"module", "free", "--quiver", qpath, "--vertex",
                           "v1", "-N", "3"});
  REQUIRE(mod.exit_code == 0);
  const std::string mpath = "/tmp/shifteq_test_mod.json";
  {
    std::ofstream out(mpath);
    out << mod.out;
  }
  RunResult tau = run_cli({"module", "tau-check", "--l", "[[1,0,1],[0,1,0]]",
                           "--r", "[[0,1],[1,0],[1,0]]", mpath});
  CHECK(tau.exit_code == 0);
  CHECK(tau.out.find("\"ok\":true") != std::string::npos);
  CHECK(tau.out.find("\"coker\":[[1,0],[0,0],[0,0],[0,0]]") !=
        std::string::npos);

  RunResult eta = run_cli({"module", "eta-check", "--l", "[[1,0,1],[0,1,0]]",
                           "--r", "[[0,1],[1,0],[1,0]]", mpath});
  CHECK(eta.exit_code == 0);

  RunResult hil = run_cli({"module", "hilbert", mpath});
  CHECK(hil.out == "[[1,0],[1,1],[2,1],[3,2]]\n");

  std::remove(qpath.c_str());
  std::remove(mpath.c_str());
}

TEST_CASE("cli: bratteli emits stable dot") {
  const std::string qb =
      R"({"vertices":["1"],"arrows":[{"id":"x","src":"1","dst":"1"},)"
      R"({"id":"y","src":"1","dst":"1"}]})";
  RunResult a = run_cli({"bratteli", "emit", qb, "-N", "4", "--format", "dot"});
  RunResult b = run_cli({"bratteli", "emit", qb, "-N", "4", "--format", "dot"});
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  RunResult j = run_cli({"bratteli", "emit", qb, "-N", "4"});
  CHECK(j.out.find("\"labels\":[[1],[2],[4],[8],[16]]") != std::string::npos);

  RunResult bad = run_cli({"bratteli", "emit", qb, "-N", "2", "--d0", "[1,2]"});
  CHECK(bad.exit_code == 3);
}

TEST_CASE("cli: apply-chain and search-chain round trip") {
  RunResult quiver = run_cli({"quiver", "from-matrix", "[[1,1],[1,1]]"});
  const std::string qpath = "/tmp/shifteq_test_qa.json";
  {
    std::ofstream out(qpath);
    out << quiver.out;
  }
  RunResult mod = run_cli({"module", "free", "--quiver", qpath, "--vertex",
                           "v1", "-N", "2"});
  const std::string mpath = "/tmp/shifteq_test_moda.json";
  {
    std::ofstream out(mpath);
    out << mod.out;
  }
  // One application of F through the rank-one factorization.
  RunResult chained = run_cli({"module", "apply-chain", "--contexts",
                               R"([{"L":[[1],[1]],"R":[[1,1]]}])", mpath});
  CHECK(chained.exit_code == 0);
  RunResult direct = run_cli({"module", "apply-f", "--l", "[[1],[1]]", "--r",
                              "[[1,1]]", mpath});
  CHECK(chained.out == direct.out);

  RunResult found = run_cli({"sse", "search-chain", "--a", "[[1,1],[1,1]]",
                             "--b", "[[2]]", "--depth", "1", "--inner-dim-max",
                             "2", "--entry-max", "2"});
  CHECK(found.exit_code == 0);
  CHECK(found.out.find("\"outcome\":\"found\"") != std::string::npos);

  std::remove(qpath.c_str());
  std::remove(mpath.c_str());
}
