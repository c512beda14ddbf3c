#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "segguard/market.hpp"

namespace segguard {

// Non-empty subset of grid indices, kept sorted ascending.
using SupportSet = std::vector<PriceIndex>;

struct ExtremeMarket {
  SupportSet support;
  Market market;
};

// The market supported on `support` in which the monopolist is indifferent
// between charging any price in the support: writing m = v_{min S} and
// mu(v_i) for the next support valuation above v_i,
//   x_i = m * (1/v_i - 1/mu(v_i))  for interior support points,
//   x_i = m / v_{max S}            at the top of the support,
//   x_i = 0                        off support.
inline ExtremeMarket extreme_market(const ValuationGrid& grid, SupportSet support) {
  if (support.empty()) throw EmptySupport();
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  for (PriceIndex k : support)
    if (k < 1 || k > grid.size()) throw IndexOutOfRange(k);

  const Rational& v_min = grid.value(support.front());
  std::vector<Rational> masses(grid.size(), Rational(0));
  for (std::size_t pos = 0; pos + 1 < support.size(); ++pos) {
    const Rational& v_i = grid.value(support[pos]);
    const Rational& v_next = grid.value(support[pos + 1]);
    masses[support[pos] - 1] = v_min * (Rational(1) / v_i - Rational(1) / v_next);
  }
  masses[support.back() - 1] = v_min / grid.value(support.back());
  return ExtremeMarket{std::move(support), Market(grid, std::move(masses))};
}

struct GreedyStep {
  SupportSet support;  // S_l
  Market extreme;      // x^{S_l}
  Rational mass;       // y(x^{S_l})
};

// Full trace of the greedy extreme-market segmentation. residuals[l] is the
// market of consumers not yet assigned entering step l (residuals[0] is the
// input); the residual after the final step is the zero vector and is not
// stored. alphas[l] is the share of residuals[l] packed into steps[l].
struct GreedyDecomposition {
  std::vector<GreedyStep> steps;
  std::vector<Market> residuals;
  std::vector<Rational> alphas;
};

// Iteratively packs as many consumers as possible into the extreme market on
// the residual's support. Each step removes at least one valuation from the
// residual, so there are at most K steps. On exact rationals the projection's
// first zero is a finite minimum: for coordinates with x_i < x^S_i the zero
// of z_i(t) = x^S_i + t (x_i - x^S_i) sits at t_i = x^S_i / (x^S_i - x_i),
// and alpha = 1 - 1/min_i t_i. Coordinates that reach zero together drop out
// of the support in the same step.
inline GreedyDecomposition greedy_decompose(const Market& input) {
  GreedyDecomposition out;
  Rational remaining = 1;  // prod_{j<=l} (1 - alpha^j)
  Market residual = input;

  while (true) {
    out.residuals.push_back(residual);
    SupportSet support;
    for (PriceIndex k = 1; k <= residual.size(); ++k)
      if (residual.mass(k) > 0) support.push_back(k);
    ExtremeMarket ext = extreme_market(residual.grid(), std::move(support));

    if (residual == ext.market) {
      out.alphas.emplace_back(1);
      out.steps.push_back(GreedyStep{ext.support, std::move(ext.market), remaining});
      break;
    }

    Rational t_hat = 0;
    bool have_t = false;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      const Rational& xi = residual.masses()[i];
      const Rational& si = ext.market.masses()[i];
      if (xi < si) {
        Rational t = si / (si - xi);
        if (!have_t || t < t_hat) {
          t_hat = std::move(t);
          have_t = true;
        }
      }
    }
    // Some coordinate must shrink: both vectors sum to one and they differ.
    Rational alpha = 1 - Rational(1) / t_hat;

    std::vector<Rational> next(residual.size());
    for (std::size_t i = 0; i < residual.size(); ++i) {
      const Rational& xi = residual.masses()[i];
      const Rational& si = ext.market.masses()[i];
      next[i] = si + t_hat * (xi - si);
    }

    Rational mass = alpha * remaining;
    remaining *= 1 - alpha;
    out.alphas.push_back(std::move(alpha));
    out.steps.push_back(GreedyStep{std::move(ext.support), std::move(ext.market), std::move(mass)});
    residual = Market(residual.grid(), std::move(next));
  }
  return out;
}

// Total mass assigned to extreme markets whose support contains index i.
inline Rational mass_containing(const GreedyDecomposition& d, PriceIndex i) {
  if (d.steps.empty() || i < 1 || i > d.steps.front().extreme.size()) throw IndexOutOfRange(i);
  Rational total = 0;
  for (const GreedyStep& step : d.steps)
    if (std::binary_search(step.support.begin(), step.support.end(), i)) total += step.mass;
  return total;
}

}  // namespace segguard
