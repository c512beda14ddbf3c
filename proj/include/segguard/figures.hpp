#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "segguard/bounds.hpp"
#include "segguard/constructions.hpp"
#include "segguard/oracle.hpp"

namespace segguard {

struct SweepRow {
  Rational x3;
  Rational lambda_lower;
  PriceIndex i_star;
};

// The one-parameter market family x = (2/5, 3/5 - x3, x3) over {1, 2, 3} with
// x3 on an even grid of (0, 1/10]: x3 = (j/steps) * 1/10, j = 1..steps.
inline std::vector<SweepRow> lambda_sweep(std::size_t steps) {
  if (steps < 2) throw Error("sweep needs at least 2 grid points");
  const ValuationGrid grid({Rational(1), Rational(2), Rational(3)});
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (std::size_t j = 1; j <= steps; ++j) {
    Rational x3 = Rational(j) / Rational(10 * steps);
    Market m(grid, {Rational(2) / 5, Rational(3) / 5 - x3, x3});
    const Bounds b = compute_bounds(m);
    rows.push_back(SweepRow{std::move(x3), b.lambda_lower, b.i_star});
  }
  return rows;
}

struct TrianglePoint {
  std::string kind;  // uniform | witness_reduce | witness_improve | sample
  Rational ps;
  Rational cs;
};

// Samples (producer surplus, consumer surplus) pairs reachable under the
// database: the uniform-pricing reference, the two constructive witnesses
// when their preconditions hold, and vertices of random profile polytopes
// under seeded random rational objectives, all evaluated at the monopolist's
// true tie-broken best responses.
inline std::vector<TrianglePoint> triangle_sample(const Market& m, const Database& f,
                                                  std::size_t samples, std::uint64_t seed,
                                                  const OracleOptions& opts = {}) {
  std::vector<TrianglePoint> points;
  const Bounds b = compute_bounds(m);
  points.push_back(TrianglePoint{"uniform", b.pi_star, b.u_star});

  if (f.labels() >= 2) {
    std::size_t reduce_label = 0, improve_label = 0;
    for (std::size_t s = 1; s <= f.labels(); ++s) {
      if (reduce_label == 0 && f.mass(s) <= b.lambda_lower) reduce_label = s;
      if (improve_label == 0 && f.mass(s) < b.lambda_upper) improve_label = s;
    }
    if (reduce_label != 0) {
      const SegmentationOutcome out = evaluate(m, construct_cs_reducing(m, f, reduce_label));
      points.push_back(TrianglePoint{"witness_reduce", out.ps, out.cs});
    } else if (improve_label != 0) {  // improving witness needs worst-case optimality
      const SegmentationOutcome out = evaluate(m, construct_cs_improving(m, f, improve_label));
      points.push_back(TrianglePoint{"witness_improve", out.ps, out.cs});
    }
  }

  const std::size_t K = m.size();
  const std::size_t n = f.labels();
  Integer total = 1;
  for (std::size_t s = 0; s < n; ++s) total *= Integer(K);
  if (total > Integer(opts.max_profiles))
    throw EnumerationTooLarge(to_string(Rational(total)) + " profiles, limit " +
                              std::to_string(opts.max_profiles));
  PriceIndex kmax = K;
  while (kmax > 1 && m.mass(kmax) == 0) --kmax;
  std::size_t count = 1;
  for (std::size_t s = 0; s < n; ++s) count *= kmax;

  // Feasible profiles are precomputed so sampling never retries.
  std::vector<std::vector<PriceIndex>> feasible;
  for (std::size_t t = 0; t < count; ++t) {
    std::vector<PriceIndex> prices(n);
    std::size_t idx = t;
    for (std::size_t s = n; s-- > 0;) {
      prices[s] = static_cast<PriceIndex>(idx % kmax) + 1;
      idx /= kmax;
    }
    LinearProgram lp = detail::profile_polytope(m, f, prices, false, Rational(0));
    if (solve_lp(lp).status == LpStatus::Optimal) feasible.push_back(std::move(prices));
  }
  if (feasible.empty()) throw Error("no feasible price profile; inputs inconsistent");

  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::vector<PriceIndex>& prices = feasible[rng() % feasible.size()];
    LinearProgram lp = detail::profile_polytope(m, f, prices, false, Rational(0));
    for (Rational& c : lp.objective) {
      const std::int64_t num = static_cast<std::int64_t>(rng() % 19) - 9;
      const std::int64_t den = static_cast<std::int64_t>(rng() % 4) + 1;
      c = Rational(num) / den;
    }
    lp.maximize = true;
    const LpResult res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) throw Error("feasible profile failed to solve");
    const Segmentation seg = detail::vertex_to_segmentation(m, f, res.point);
    const SegmentationOutcome out = evaluate(m, seg);
    points.push_back(TrianglePoint{"sample", out.ps, out.cs});
  }
  return points;
}

}  // namespace segguard
