#include <catch2/catch_amalgamated.hpp>

#include "shifteq/json_io.hpp"

#include "helpers.hpp"

using namespace shifteq;
using testutil::quiver_51;

TEST_CASE("integer scalars round trip, with strings past 64 bits") {
  CHECK(int_to_json(Int(42)).is_number_unsigned());
  CHECK(int_to_json(Int(-3)).is_number_integer());
  Int huge = Int("123456789012345678901234567890");
  Json j = int_to_json(huge);
  CHECK(j.is_string());
  CHECK(int_from_json(j, "/x") == huge);
  CHECK(int_from_json(Json(7), "/x") == 7);
  CHECK_THROWS_AS(int_from_json(Json(1.5), "/x"), JsonFormatError);
  CHECK_THROWS_AS(int_from_json(Json("12x"), "/x"), JsonFormatError);
}

TEST_CASE("rational scalars use p/q strings") {
  CHECK(rat_to_json(Rat(3, 2)) == Json("3/2"));
  CHECK(rat_to_json(Rat(-4)) == Json("-4/1"));
  CHECK(rat_from_json(Json("6/4"), "/x") == Rat(3, 2));
  CHECK(rat_from_json(Json(5), "/x") == Rat(5));
  CHECK_THROWS_AS(rat_from_json(Json("1/0"), "/x"), JsonFormatError);
}

TEST_CASE("matrices round trip") {
  IntMatrix m{{1, -2}, {0, 5}};
  CHECK(matrix_from_json(matrix_to_json(m), "/m") == m);
  CHECK(matrix_from_json(Json::parse("[]"), "/m") == IntMatrix(0, 0));
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1],[2,3]]"), "/m"),
                  JsonFormatError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("{}"), "/m"), JsonFormatError);
}

TEST_CASE("quivers round trip and dump deterministically") {
  Quiver q = quiver_51();
  Json j = quiver_to_json(q);
  Quiver back = quiver_from_json(j, "/q");
  CHECK(back == q);
  CHECK(dump_json(j) == dump_json(quiver_to_json(back)));

  CHECK_THROWS_AS(quiver_from_json(Json::parse("{\"vertices\":[\"1\"]}"), "/q"),
                  JsonFormatError);
  // Semantic errors surface as format errors too: unknown endpoint.
  CHECK_THROWS_AS(
      quiver_from_json(
          Json::parse(
              R"({"vertices":["1"],"arrows":[{"id":"a","src":"1","dst":"2"}]})"),
          "/q"),
      JsonFormatError);
}

TEST_CASE("canonical quiver serialization ignores construction order") {
  Quiver a({"1", "2"}, {Arrow{"x", "1", "2"}, Arrow{"y", "2", "1"}});
  Quiver b({"2", "1"}, {Arrow{"y", "2", "1"}, Arrow{"x", "1", "2"}});
  CHECK(dump_json(canonical_quiver_json(a)) ==
        dump_json(canonical_quiver_json(b)));
}

TEST_CASE("module JSON round trips") {
  Quiver q = quiver_51();
  TruncatedGradedModule m = random_module(q, 3, 7, 2);
  Json j = module_to_json(m);
  TruncatedGradedModule back = module_from_json(j, "");
  CHECK(back.dims() == m.dims());
  for (std::size_t a = 0; a < q.arrows().size(); ++a)
    for (std::size_t n = 0; n < 3; ++n)
      CHECK(back.action(a, n) == m.action(a, n));
  CHECK(dump_json(module_to_json(back)) == dump_json(j));

  j["dims"]["1"][0] = 99;  // breaks the declared action shapes
  CHECK_THROWS_AS(module_from_json(j, ""), JsonFormatError);
}

TEST_CASE("module JSON bytes are frozen") {
  // One-loop quiver, N = 1, a single 1x1 action block.
  Quiver q({"1"}, {Arrow{"x", "1", "1"}});
  std::vector<std::vector<std::size_t>> dims{{1}, {1}};
  std::vector<std::vector<RatMatrix>> action(1);
  RatMatrix block(1, 1);
  block(0, 0) = Rat(3, 2);
  action[0].push_back(block);
  TruncatedGradedModule m(q, 1, dims, action);
  CHECK(dump_json(module_to_json(m)) ==
        "{\"N\":1,\"action\":{\"x\":{\"0\":[[\"3/2\"]]}},"
        "\"dims\":{\"0\":[1],\"1\":[1]},"
        "\"quiver\":{\"arrows\":[{\"dst\":\"1\",\"id\":\"x\",\"src\":\"1\"}],"
        "\"vertices\":[\"1\"]}}\n");
}

TEST_CASE("certificates round trip") {
  SSEChain chain({SSEStep(IntMatrix{{1}, {1}}, IntMatrix{{1, 1}})});
  Json cert = chain_certificate_to_json(chain);
  auto steps = chain_steps_from_json(cert, "");
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].first == IntMatrix{{1}, {1}});
  CHECK(verify_chain(steps, IntMatrix{{1, 1}, {1, 1}}, IntMatrix{{2}}).ok);

  SEWitness w{IntMatrix{{1}, {1}}, IntMatrix{{1, 1}}, 1};
  Json se = se_certificate_to_json(w);
  SEWitness back = se_witness_from_json(se, "");
  CHECK(back.l == w.l);
  CHECK(back.lag == 1);

  CHECK_THROWS_AS(chain_steps_from_json(Json::parse("{\"kind\":\"other\"}"), ""),
                  JsonFormatError);
  try {
    chain_steps_from_json(
        Json::parse(R"({"kind":"sse-chain","steps":[{"L":[[1]]}]})"), "");
    FAIL("expected a format error");
  } catch (const JsonFormatError& e) {
    CHECK(e.at() == "/steps/0");
  }
}

TEST_CASE("report serializations carry their payloads") {
  VerifyReport rep = verify_elementary(IntMatrix{{1, 1}, {1, 1}},
                                       IntMatrix{{2}}, IntMatrix{{1}, {0}},
                                       IntMatrix{{1, 1}});
  Json j = verify_report_to_json(rep);
  CHECK(j["ok"] == false);
  CHECK(j["failures"].size() == 3);  // two entries of A=LR, one of B=RL
  CHECK(j["failures"][0]["equality"] == "A=LR");

  Json inv = invariant_report_to_json(
      invariant_report(IntMatrix{{2}}, IntMatrix{{3}}));
  CHECK(inv["verdict"] == "distinguished");
  CHECK(inv["invariants"].contains("bowen_franks"));
}
