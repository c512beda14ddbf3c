#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"
#include "segguard/bounds.hpp"
#include "segguard/extreme.hpp"

using namespace segguard;

namespace {
const ValuationGrid kGrid({Rational(1), Rational(2), Rational(3)});
Market worked_example() {
  return Market(kGrid, {Rational(2) / 5, Rational(1) / 2, Rational(1) / 10});
}
}  // namespace

TEST_CASE("extreme markets on {1,2,3}") {
  REQUIRE(extreme_market(kGrid, {1, 2, 3}).market.masses() ==
          std::vector<Rational>{Rational(1) / 2, Rational(1) / 6, Rational(1) / 3});
  REQUIRE(extreme_market(kGrid, {2}).market.masses() ==
          std::vector<Rational>{Rational(0), Rational(1), Rational(0)});
  REQUIRE(extreme_market(kGrid, {1, 2}).market.masses() ==
          std::vector<Rational>{Rational(1) / 2, Rational(1) / 2, Rational(0)});
  REQUIRE_THROWS_AS(extreme_market(kGrid, {}), EmptySupport);
  REQUIRE_THROWS_AS(extreme_market(kGrid, {4}), IndexOutOfRange);
}

TEST_CASE("greedy decomposition of the worked example") {
  const GreedyDecomposition d = greedy_decompose(worked_example());
  REQUIRE(d.steps.size() == 3);

  REQUIRE(d.steps[0].support == SupportSet{1, 2, 3});
  REQUIRE(d.steps[0].extreme.masses() ==
          std::vector<Rational>{Rational(1) / 2, Rational(1) / 6, Rational(1) / 3});
  REQUIRE(d.steps[0].mass == Rational(3) / 10);

  REQUIRE(d.steps[1].support == SupportSet{1, 2});
  REQUIRE(d.steps[1].extreme.masses() ==
          std::vector<Rational>{Rational(1) / 2, Rational(1) / 2, Rational(0)});
  REQUIRE(d.steps[1].mass == Rational(1) / 2);

  REQUIRE(d.steps[2].support == SupportSet{2});
  REQUIRE(d.steps[2].extreme.masses() ==
          std::vector<Rational>{Rational(0), Rational(1), Rational(0)});
  REQUIRE(d.steps[2].mass == Rational(1) / 5);

  // Residual trace: x^0 = input, then (5/14, 9/14, 0), then (0, 1, 0).
  REQUIRE(d.residuals.size() == 3);
  REQUIRE(d.residuals[0] == worked_example());
  REQUIRE(d.residuals[1].masses() ==
          std::vector<Rational>{Rational(5) / 14, Rational(9) / 14, Rational(0)});
  REQUIRE(d.residuals[2].masses() ==
          std::vector<Rational>{Rational(0), Rational(1), Rational(0)});
  REQUIRE(d.alphas == std::vector<Rational>{Rational(3) / 10, Rational(5) / 7, Rational(1)});
}

TEST_CASE("greedy on an extreme market is a single step") {
  const Market ext = extreme_market(kGrid, {1, 2, 3}).market;
  const GreedyDecomposition d = greedy_decompose(ext);
  REQUIRE(d.steps.size() == 1);
  REQUIRE(d.steps[0].mass == 1);
  REQUIRE(d.steps[0].extreme == ext);

  const Market flat(kGrid, {Rational(1) / 2, Rational(1) / 2, Rational(0)});
  const GreedyDecomposition d2 = greedy_decompose(flat);
  REQUIRE(d2.steps.size() == 1);
  REQUIRE(d2.steps[0].support == SupportSet{1, 2});
  REQUIRE(d2.steps[0].mass == 1);
}

TEST_CASE("mass containing an index") {
  const GreedyDecomposition d = greedy_decompose(worked_example());
  REQUIRE(mass_containing(d, 3) == Rational(3) / 10);
  REQUIRE(mass_containing(d, 2) == 1);
  REQUIRE(mass_containing(d, 1) == Rational(4) / 5);
  REQUIRE_THROWS_AS(mass_containing(d, 0), IndexOutOfRange);
  REQUIRE_THROWS_AS(mass_containing(d, 4), IndexOutOfRange);
}

TEST_CASE("decomposition soundness on random markets") {
  testgen::Rng rng(2026'10u);
  for (int trial = 0; trial < 120; ++trial) {
    const Market m = testgen::random_market(rng, testgen::random_grid(rng, 2 + rng.below(5)));
    const GreedyDecomposition d = greedy_decompose(m);

    REQUIRE(d.steps.size() <= m.size());

    Rational total = 0;
    std::vector<Rational> mix(m.size(), Rational(0));
    for (const GreedyStep& st : d.steps) {
      REQUIRE(st.mass > 0);
      total += st.mass;
      for (std::size_t i = 0; i < m.size(); ++i) mix[i] += st.mass * st.extreme.masses()[i];

      // Monopolist indifference across the step's support.
      const Rational rev = revenue(st.extreme, st.support.front());
      for (PriceIndex k : st.support) REQUIRE(revenue(st.extreme, k) == rev);
      for (std::size_t i = 0; i < m.size(); ++i) {
        const bool in_support =
            std::binary_search(st.support.begin(), st.support.end(), PriceIndex(i + 1));
        REQUIRE((st.extreme.masses()[i] > 0) == in_support);
      }
    }
    REQUIRE(total == 1);
    REQUIRE(mix == m.masses());

    // Strict nesting of supports.
    for (std::size_t l = 1; l < d.steps.size(); ++l) {
      REQUIRE(d.steps[l].support.size() < d.steps[l - 1].support.size());
      REQUIRE(std::includes(d.steps[l - 1].support.begin(), d.steps[l - 1].support.end(),
                            d.steps[l].support.begin(), d.steps[l].support.end()));
    }
  }
}

TEST_CASE("residual trace invariants around the bound witnesses") {
  testgen::Rng rng(2026'11u);
  int refill_hits = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Market m = testgen::random_bounded_market(rng, 2, 5);
    const Bounds b = compute_bounds(m);
    const GreedyDecomposition d = greedy_decompose(m);

    for (const Market& residual : d.residuals) {
      bool above_bar = false;
      for (PriceIndex i = b.i_bar + 1; i <= m.size(); ++i)
        if (residual.mass(i) > 0) above_bar = true;
      if (above_bar) REQUIRE(residual.mass(b.i_bar) > 0);
      if (residual.mass(b.i_bar) > 0) REQUIRE(residual.mass(b.i_low) > 0);
    }
    for (std::size_t l = 1; l < d.residuals.size(); ++l) {
      bool below_low = false;
      for (PriceIndex i = 1; i < b.i_low; ++i)
        if (d.residuals[l - 1].mass(i) > 0) below_low = true;
      if (below_low) {
        REQUIRE(d.residuals[l].mass(b.i_bar) > 0);
        ++refill_hits;
      }
    }

    REQUIRE(mass_containing(d, b.i_bar) == b.lambda_lower);
  }
  REQUIRE(refill_hits > 0);  // the hypothesis side must actually occur
}
