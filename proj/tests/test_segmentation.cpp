#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"
#include "segguard/segmentation.hpp"

using namespace segguard;

namespace {
const ValuationGrid kGrid({Rational(1), Rational(2), Rational(3)});
Market worked_example() {
  return Market(kGrid, {Rational(2) / 5, Rational(1) / 2, Rational(1) / 10});
}
}  // namespace

TEST_CASE("independent segmentation reproduces uniform pricing") {
  const Market m = worked_example();
  const Database f({Rational(3) / 10, Rational(7) / 10});
  const Segmentation independent{f, {m, m}};
  const SegmentationOutcome out = evaluate(m, independent);
  REQUIRE(out.prices == std::vector<PriceIndex>{2, 2});
  REQUIRE(out.cs == Rational(1) / 10);
  REQUIRE(out.ps == Rational(6) / 5);
}

TEST_CASE("adversarial segmentation of the worked example") {
  const Market m = worked_example();
  const Database f({Rational(3) / 10, Rational(7) / 10});
  const Segmentation seg{
      f,
      {Market(kGrid, {Rational(1) / 2, Rational(1) / 6, Rational(1) / 3}),
       Market(kGrid, {Rational(5) / 14, Rational(9) / 14, Rational(0)})}};
  const SegmentationOutcome out = evaluate(m, seg);
  REQUIRE(out.prices == std::vector<PriceIndex>{3, 2});
  REQUIRE(out.cs == 0);
  REQUIRE(out.weighted(Rational(1)) == 0);
}

TEST_CASE("trivial database has a unique feasible segmentation") {
  const Market m = worked_example();
  const SegmentationOutcome out = evaluate(m, Segmentation{trivial_database(), {m}});
  REQUIRE(out.cs == Rational(1) / 10);
  REQUIRE(out.ps == Rational(6) / 5);
  REQUIRE(out.weighted(Rational(1) / 2) == Rational(13) / 20);
}

TEST_CASE("marginal inconsistency is rejected with the worst coordinate") {
  const Market m = worked_example();
  const Database f({Rational(1) / 2, Rational(1) / 2});

  // Conditional rows that are valid distributions but do not mix to the market:
  // both (3/5, 2/5, 0) mixes to residuals (+1/5, -1/10, -1/10).
  const Market row(kGrid, {Rational(3) / 5, Rational(2) / 5, Rational(0)});
  const Segmentation seg{f, {row, row}};
  try {
    evaluate(m, seg);
    FAIL("expected InconsistentMarginals");
  } catch (const InconsistentMarginals& e) {
    REQUIRE(e.index == 1);
    REQUIRE(e.residual == "1/5");
  }
}

TEST_CASE("conditionals that are not distributions are invalid input") {
  // Rows summing to 6/5 and 4/5 cannot even form markets.
  REQUIRE_THROWS_AS(Market(kGrid, {Rational(3) / 5, Rational(2) / 5, Rational(1) / 5}),
                    MassNotOne);
  REQUIRE_THROWS_AS(Market(kGrid, {Rational(1) / 5, Rational(3) / 5, Rational(0)}),
                    MassNotOne);
}

TEST_CASE("random mixtures evaluate consistently") {
  testgen::Rng rng(2026'40u);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(2);
    const ValuationGrid grid = testgen::random_grid(rng, 2 + rng.below(3));
    const Database f = testgen::random_database(rng, n);

    // Build the aggregate from random conditionals, then evaluate.
    std::vector<Market> conditionals;
    for (std::size_t s = 0; s < n; ++s)
      conditionals.push_back(testgen::random_market(rng, grid));
    std::vector<Rational> mix(grid.size(), Rational(0));
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t k = 0; k < grid.size(); ++k)
        mix[k] += f.masses()[s] * conditionals[s].masses()[k];
    const Market aggregate(grid, std::move(mix));

    const SegmentationOutcome out = evaluate(aggregate, Segmentation{f, conditionals});
    REQUIRE(out.cs >= 0);
    REQUIRE(out.ps > 0);

    Rational cs = 0, ps = 0;
    for (std::size_t s = 0; s < n; ++s) {
      const PriceIndex p = monopoly_price_index(conditionals[s]);
      cs += f.masses()[s] * consumer_surplus(conditionals[s], p);
      ps += f.masses()[s] * revenue(conditionals[s], p);
    }
    REQUIRE(out.cs == cs);
    REQUIRE(out.ps == ps);
    REQUIRE(out.weighted(Rational(3) / 4) == Rational(3) / 4 * cs + Rational(1) / 4 * ps);
  }
}
