#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "segguard/classify.hpp"
#include "segguard/market.hpp"

namespace segguard {

// Per-label conditional markets over a shared grid. Feasibility against an
// aggregate market means exact marginal consistency:
//   sum_s f_s * sigma(k|s) = x_k for every k.
struct Segmentation {
  Database database;
  std::vector<Market> conditionals;
};

struct SegmentationOutcome {
  std::vector<PriceIndex> prices;  // per-segment best response, ties broken upward
  Rational cs;
  Rational ps;

  Rational weighted(const Rational& alpha) const {
    return weighted_total_surplus(alpha, cs, ps);
  }
};

// Throws InconsistentMarginals (reporting the worst coordinate residual) if
// the segmentation does not reproduce the aggregate market exactly.
inline void check_marginal_consistency(const Market& aggregate, const Segmentation& seg) {
  if (seg.conditionals.size() != seg.database.labels())
    throw IndexOutOfRange(seg.conditionals.size());
  for (const Market& cond : seg.conditionals)
    if (cond.grid() != aggregate.grid()) throw IndexOutOfRange(cond.size());

  std::size_t worst_index = 0;
  Rational worst_abs = 0, worst_residual = 0;
  for (PriceIndex k = 1; k <= aggregate.size(); ++k) {
    Rational mixed = 0;
    for (std::size_t s = 1; s <= seg.database.labels(); ++s)
      mixed += seg.database.mass(s) * seg.conditionals[s - 1].mass(k);
    Rational residual = mixed - aggregate.mass(k);
    Rational mag = residual < 0 ? Rational(-residual) : residual;
    if (mag > worst_abs) {
      worst_abs = std::move(mag);
      worst_residual = std::move(residual);
      worst_index = k;
    }
  }
  if (worst_index != 0)
    throw InconsistentMarginals(worst_index, to_string(worst_residual));
}

// Evaluates the monopolist's best response in every segment (highest optimal
// price) and the resulting exact consumer and producer surplus.
inline SegmentationOutcome evaluate(const Market& aggregate, const Segmentation& seg) {
  check_marginal_consistency(aggregate, seg);
  SegmentationOutcome out;
  out.cs = 0;
  out.ps = 0;
  out.prices.reserve(seg.conditionals.size());
  for (std::size_t s = 1; s <= seg.database.labels(); ++s) {
    const Market& cond = seg.conditionals[s - 1];
    const PriceIndex p = monopoly_price_index(cond);
    out.prices.push_back(p);
    out.cs += seg.database.mass(s) * consumer_surplus(cond, p);
    out.ps += seg.database.mass(s) * producer_surplus(cond, p);
  }
  return out;
}

}  // namespace segguard
