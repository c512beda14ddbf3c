#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "segguard/errors.hpp"
#include "segguard/rational.hpp"

namespace segguard {

// 1-based position in the valuation grid; v_k is grid.value(k).
using PriceIndex = std::size_t;

// Strictly increasing positive valuations v_1 < ... < v_K, K >= 2.
class ValuationGrid {
 public:
  explicit ValuationGrid(std::vector<Rational> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw GridNotIncreasing(values_.size());
    Rational prev = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] <= prev) throw GridNotIncreasing(i + 1);
      prev = values_[i];
    }
  }

  std::size_t size() const { return values_.size(); }
  const Rational& value(PriceIndex k) const {
    if (k < 1 || k > values_.size()) throw IndexOutOfRange(k);
    return values_[k - 1];
  }
  const std::vector<Rational>& values() const { return values_; }

  bool operator==(const ValuationGrid& other) const = default;

 private:
  std::vector<Rational> values_;
};

// A distribution of consumers over the grid. Masses may be zero (extreme
// markets live on a subset of the grid); they are non-negative and sum to
// exactly one. Tail masses are precomputed on validation.
class Market {
 public:
  Market(ValuationGrid grid, std::vector<Rational> masses)
      : grid_(std::move(grid)), masses_(std::move(masses)) {
    if (masses_.size() != grid_.size()) throw IndexOutOfRange(masses_.size());
    Rational sum = 0;
    for (std::size_t i = 0; i < masses_.size(); ++i) {
      if (masses_[i] < 0) throw NegativeMass(i + 1);
      sum += masses_[i];
    }
    if (sum != 1) throw MassNotOne(to_string(sum));
    tails_.resize(masses_.size());
    Rational acc = 0;
    for (std::size_t i = masses_.size(); i-- > 0;) {
      acc += masses_[i];
      tails_[i] = acc;
    }
  }

  const ValuationGrid& grid() const { return grid_; }
  std::size_t size() const { return masses_.size(); }
  const std::vector<Rational>& masses() const { return masses_; }
  const Rational& mass(PriceIndex k) const {
    if (k < 1 || k > masses_.size()) throw IndexOutOfRange(k);
    return masses_[k - 1];
  }
  // x̄_k: proportion of consumers with valuation >= v_k.
  const Rational& tail(PriceIndex k) const {
    if (k < 1 || k > tails_.size()) throw IndexOutOfRange(k);
    return tails_[k - 1];
  }

  bool operator==(const Market& other) const = default;

 private:
  ValuationGrid grid_;
  std::vector<Rational> masses_;
  std::vector<Rational> tails_;
};

inline Market validate_market(ValuationGrid grid, std::vector<Rational> masses) {
  return Market(std::move(grid), std::move(masses));
}

// Expected revenue v_k * x̄_k from posting price v_k.
inline Rational revenue(const Market& m, PriceIndex k) { return m.grid().value(k) * m.tail(k); }

// The uniform monopoly price index: the largest revenue maximizer
// (the monopolist breaks ties against consumers).
inline PriceIndex monopoly_price_index(const Market& m) {
  PriceIndex best = 1;
  Rational best_rev = revenue(m, 1);
  for (PriceIndex k = 2; k <= m.size(); ++k) {
    Rational rev = revenue(m, k);
    if (rev >= best_rev) {
      best_rev = std::move(rev);
      best = k;
    }
  }
  return best;
}

// Consumer surplus when price v_k is charged: sum_{j>=k} (v_j - v_k) x_j.
inline Rational consumer_surplus(const Market& m, PriceIndex k) {
  const Rational& vk = m.grid().value(k);
  Rational cs = 0;
  for (PriceIndex j = k; j <= m.size(); ++j) cs += (m.grid().value(j) - vk) * m.mass(j);
  return cs;
}

// Producer surplus equals revenue; kept as a named surplus quantity.
inline Rational producer_surplus(const Market& m, PriceIndex k) { return revenue(m, k); }

// alpha-weighted total surplus, alpha in [1/2, 1].
inline Rational weighted_total_surplus(const Rational& alpha, const Rational& cs,
                                       const Rational& ps) {
  if (alpha < Rational(1) / 2 || alpha > 1) throw AlphaOutOfRange(to_string(alpha));
  return alpha * cs + (1 - alpha) * ps;
}

}  // namespace segguard
