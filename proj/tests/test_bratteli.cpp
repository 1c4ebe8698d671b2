#include <catch2/catch_amalgamated.hpp>

#include "shifteq/bratteli.hpp"

#include "helpers.hpp"

using namespace shifteq;
using testutil::quiver_A;
using testutil::quiver_B;

TEST_CASE("bratteli labels double at every level") {
  BratteliDiagram da = bratteli(quiver_A(), 4);
  REQUIRE(da.labels.size() == 5);
  for (std::size_t n = 0; n <= 4; ++n) {
    Int expect = Int(1) << n;
    CHECK(da.labels[n] == std::vector<Int>{expect, expect});
  }

  BratteliDiagram db = bratteli(quiver_B(), 4);
  for (std::size_t n = 0; n <= 4; ++n)
    CHECK(db.labels[n] == std::vector<Int>{Int(1) << n});
  CHECK(db.edges == IntMatrix{{2}});
}

TEST_CASE("bratteli level zero and custom start") {
  BratteliDiagram d0 = bratteli(quiver_A(), 0);
  CHECK(d0.labels.size() == 1);
  CHECK(d0.labels[0] == std::vector<Int>{1, 1});

  BratteliDiagram custom = bratteli(quiver_B(), 2, {Int(3)});
  CHECK(custom.labels[2] == std::vector<Int>{12});

  CHECK_THROWS_AS(bratteli(quiver_A(), 2, {Int(1)}), std::invalid_argument);
}

TEST_CASE("bratteli labels equal incidence powers applied to the start") {
  std::mt19937_64 rng(307);
  for (int trial = 0; trial < 10; ++trial) {
    Quiver q = testutil::random_quiver(rng, 4, 8);
    const std::size_t nv = q.vertices().size();
    std::vector<Int> d0;
    for (std::size_t v = 0; v < nv; ++v) d0.push_back(Int(rng() % 3));
    BratteliDiagram d = bratteli(q, 5, d0);
    IntMatrix c = incidence_matrix(q);
    for (std::size_t n = 0; n <= 5; ++n)
      CHECK(d.labels[n] == c.pow(n).apply(d0));
  }
}

TEST_CASE("pushing labels through R intertwines the two diagrams") {
  // R (LR)^n d0 == (RL)^n (R d0), tested entry by entry.
  std::mt19937_64 rng(311);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + rng() % 3;
    const std::size_t n = 1 + rng() % 3;
    IntMatrix l = testutil::random_matrix(rng, m, n, 0, 2);
    IntMatrix r = testutil::random_matrix(rng, n, m, 0, 2);
    std::vector<Int> d0;
    for (std::size_t v = 0; v < m; ++v) d0.push_back(Int(rng() % 3));

    BratteliDiagram lr = bratteli(quiver_from_matrix(l * r), 4, d0);
    BratteliDiagram rl = bratteli(quiver_from_matrix(r * l), 4, r.apply(d0));
    for (std::size_t level = 0; level <= 4; ++level)
      CHECK(r.apply(lr.labels[level]) == rl.labels[level]);
  }
}

TEST_CASE("dot output is deterministic and counts parallel edges") {
  BratteliDiagram db = bratteli(quiver_B(), 4);
  std::string dot1 = emit_dot(db);
  std::string dot2 = emit_dot(db);
  CHECK(dot1 == dot2);

  std::size_t edges = 0;
  for (std::size_t pos = dot1.find("->"); pos != std::string::npos;
       pos = dot1.find("->", pos + 1))
    ++edges;
  CHECK(edges == 8);  // multiplicity 2 at each of 4 levels

  BratteliDiagram single = bratteli(quiver_B(), 0);
  CHECK(emit_dot(single) ==
        "digraph bratteli {\n"
        "rankdir=LR;\n"
        "node [shape=plaintext];\n"
        "subgraph level0 {\n"
        "rank=same;\n"
        "\"L0_1\" [label=\"1:1\"];\n"
        "}\n"
        "}\n");
}
