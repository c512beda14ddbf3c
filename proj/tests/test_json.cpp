#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"
#include "segguard/json_io.hpp"

using namespace segguard;

TEST_CASE("rational parsing") {
  REQUIRE(parse_rational("3/10") == Rational(3) / 10);
  REQUIRE(parse_rational("4/6") == Rational(2) / 3);  // reduced on read
  REQUIRE(parse_rational(" -7/2 ") == Rational(-7) / 2);
  REQUIRE(parse_rational("5") == Rational(5));
  REQUIRE(to_string(parse_rational("10/4")) == "5/2");
  REQUIRE_THROWS_AS(parse_rational("1/0"), ParseError);
  REQUIRE_THROWS_AS(parse_rational("0.5"), ParseError);
  REQUIRE_THROWS_AS(parse_rational(""), ParseError);
  REQUIRE_THROWS_AS(parse_rational("a/b"), ParseError);
}

TEST_CASE("market round-trip") {
  const json j = json::parse(R"({"valuations": ["1","2","3"],
                                 "masses": ["2/5","1/2","1/10"]})");
  const Market m = market_from_json(j);
  REQUIRE(m.grid().values() == std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
  REQUIRE(market_from_json(market_to_json(m)) == m);

  REQUIRE_THROWS_AS(market_from_json(json::parse(R"({"masses": ["1"]})")), ParseError);
  REQUIRE_THROWS_AS(
      market_from_json(json::parse(R"({"valuations": ["1","2"], "masses": ["1/2","1/3"]})")),
      MassNotOne);
}

TEST_CASE("database round-trip") {
  const Database f = database_from_json(json::parse(R"({"masses": ["1/2","1/2"]})"));
  REQUIRE(f.labels() == 2);
  REQUIRE(database_from_json(database_to_json(f)) == f);
  REQUIRE_THROWS_AS(database_from_json(json::parse(R"({"masses": []})")), IndexOutOfRange);
}

TEST_CASE("segmentation round-trip keeps exact strings") {
  testgen::Rng rng(2026'80u);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng.below(3);
    const ValuationGrid grid = testgen::random_grid(rng, 2 + rng.below(3));
    const Database f = testgen::random_database(rng, n);
    std::vector<Market> conditionals;
    for (std::size_t s = 0; s < n; ++s) conditionals.push_back(testgen::random_market(rng, grid));
    const Segmentation seg{f, conditionals};

    const Segmentation back = segmentation_from_json(segmentation_to_json(seg), grid);
    REQUIRE(back.database == seg.database);
    REQUIRE(back.conditionals == seg.conditionals);
  }
}

TEST_CASE("bounds and classification JSON carry exact strings") {
  const Market m(ValuationGrid({Rational(1), Rational(2), Rational(3)}),
                 {Rational(2) / 5, Rational(1) / 2, Rational(1) / 10});
  const Bounds b = compute_bounds(m);
  const json jb = bounds_to_json(b, m.grid());
  REQUIRE(jb["lambda_lower"] == "3/10");
  REQUIRE(jb["lambda_lower_dec"] == 0.3);
  REQUIRE(jb["lambda_upper"] == "4/5");
  REQUIRE(jb["v_star"] == "2");
  REQUIRE(jb["max_labels"] == 3);
  REQUIRE(jb["f2_nonempty"] == true);

  const Classification c = classify(m, Database({Rational(3) / 10, Rational(7) / 10}));
  const json jc = classification_to_json(c, b, m.grid());
  REQUIRE(jc["in_wc"] == false);
  REQUIRE(jc["binding_label"] == 1);
  REQUIRE(jc["bounds"]["u_star"] == "1/10");
}

TEST_CASE("oracle result JSON") {
  const Market m(ValuationGrid({Rational(1), Rational(2), Rational(3)}),
                 {Rational(2) / 5, Rational(1) / 2, Rational(1) / 10});
  const OracleResult r = worst_case_cs(m, Database({Rational(3) / 10, Rational(7) / 10}));
  const json j = oracle_result_to_json(r, m.grid());
  REQUIRE(j["value"] == "0");
  REQUIRE(j["achieved"] == r.achieved);
  REQUIRE(j["profile"].size() == 2);
  REQUIRE(j["witness"]["conditionals"].size() == 2);
  REQUIRE(j["profiles_enumerated"] == 9);
}
