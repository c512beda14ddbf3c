#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "segguard/bounds.hpp"
#include "segguard/extreme.hpp"
#include "segguard/segmentation.hpp"

namespace segguard {

namespace detail {

// Complete a segmentation by splitting the residual market evenly across all
// labels other than s: sigma(.|s') = (x - f_s sigma(.|s)) / (1 - f_s).
inline Segmentation complete_evenly(const Market& market, const Database& f,
                                    std::size_t label, Market segment) {
  const Rational& fs = f.mass(label);
  std::vector<Rational> rest(market.size());
  for (std::size_t i = 0; i < market.size(); ++i)
    rest[i] = (market.masses()[i] - fs * segment.masses()[i]) / (1 - fs);
  Market other(market.grid(), std::move(rest));

  std::vector<Market> conditionals;
  conditionals.reserve(f.labels());
  for (std::size_t s = 1; s <= f.labels(); ++s)
    conditionals.push_back(s == label ? segment : other);
  return Segmentation{f, std::move(conditionals)};
}

}  // namespace detail

// Witness that a database with a small label forces consumer surplus below
// the uniform level: pack label s with the prefix of the greedy decomposition
// (all of whose extreme markets still carry valuations above the uniform
// monopoly price), so segment s is priced above v_{i*} and every other
// segment weakly above it.
inline Segmentation construct_cs_reducing(const Market& market, const Database& f,
                                          std::size_t label) {
  const Bounds b = compute_bounds(market);
  if (f.labels() < 2) throw TrivialDatabase();
  const Rational& fs = f.mass(label);
  if (fs > b.lambda_lower) throw LabelNotBinding(label);

  const GreedyDecomposition d = greedy_decompose(market);
  std::size_t T = 0;
  Rational prefix = 0;  // sum of masses strictly before step T
  while (prefix + d.steps[T].mass < fs) {
    prefix += d.steps[T].mass;
    ++T;
  }

  std::vector<Rational> masses(market.size(), Rational(0));
  for (std::size_t j = 0; j < T; ++j) {
    const Rational w = d.steps[j].mass / fs;
    for (std::size_t i = 0; i < market.size(); ++i)
      masses[i] += w * d.steps[j].extreme.masses()[i];
  }
  const Rational w_last = 1 - prefix / fs;
  for (std::size_t i = 0; i < market.size(); ++i)
    masses[i] += w_last * d.steps[T].extreme.masses()[i];

  return detail::complete_evenly(market, f, label, Market(market.grid(), std::move(masses)));
}

namespace detail {

// Fill the coordinates at and above i_star starting from cap_j = x_j / f_s,
// removing mass from the top valuation downward until the sum equals target.
inline void fill_high_from_top(const Market& market, const Rational& fs, PriceIndex i_star,
                               const Rational& target, std::vector<Rational>& masses) {
  Rational excess = market.tail(i_star) / fs - target;
  for (PriceIndex j = market.size(); j >= i_star; --j) {
    Rational cap = market.mass(j) / fs;
    if (excess >= cap) {
      masses[j - 1] = 0;
      excess -= cap;
    } else {
      masses[j - 1] = cap - excess;
      excess = 0;
    }
  }
}

}  // namespace detail

// Witness that a worst-case-optimal database with a label below lambda_upper
// admits a segmentation with consumer surplus strictly above the uniform
// level (and producer surplus strictly above uniform revenue): segment s
// absorbs the below-price mass so a price below v_{i*} becomes strictly
// optimal there, while every other segment keeps a price weakly below v_{i*}.
inline Segmentation construct_cs_improving(const Market& market, const Database& f,
                                           std::size_t label) {
  const Bounds b = compute_bounds(market);
  if (!classify_with_bounds(b, f).in_wc) throw NotWorstCaseOptimal();
  const Rational& fs = f.mass(label);
  if (fs >= b.lambda_upper) throw LabelNotQualifying(label);

  Rational low_sum = 0;  // sum_{j < i*} x_j / f_s
  for (PriceIndex j = 1; j < b.i_star; ++j) low_sum += market.mass(j) / fs;

  std::vector<Rational> masses(market.size(), Rational(0));
  if (low_sum < 1) {
    for (PriceIndex j = 1; j < b.i_star; ++j) masses[j - 1] = market.mass(j) / fs;
    const Rational target = market.tail(b.i_star) / fs + 1 - Rational(1) / fs;
    detail::fill_high_from_top(market, fs, b.i_star, target, masses);
    return detail::complete_evenly(market, f, label, Market(market.grid(), std::move(masses)));
  }

  // All below-price mass does not fit in the segment: scale it to 1 - eps and
  // keep eps above i*, with eps the largest power of 1/2 that still prices
  // the segment strictly below v_{i*}.
  for (int m = 1; m <= 64; ++m) {
    const Rational eps = Rational(1) / (Integer(1) << m);
    if (eps > market.tail(b.i_star) / fs) continue;
    const Rational scale = (1 - eps) / low_sum;
    for (PriceIndex j = 1; j < b.i_star; ++j) masses[j - 1] = scale * market.mass(j) / fs;
    detail::fill_high_from_top(market, fs, b.i_star, eps, masses);
    Market segment(market.grid(), masses);
    if (monopoly_price_index(segment) < b.i_star)
      return detail::complete_evenly(market, f, label, std::move(segment));
  }
  throw Error("no feasible improving segment found for label " + std::to_string(label));
}

}  // namespace segguard
