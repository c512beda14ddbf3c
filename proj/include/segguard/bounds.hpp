#pragma once

#include "segguard/market.hpp"

namespace segguard {

// The two robust thresholds and their witness indices for a market:
//   lambda_lower: a database keeps worst-case consumer surplus at the uniform
//                 level iff every label mass strictly exceeds it;
//   lambda_upper: a worst-case-optimal database admits a segmentation with
//                 strictly higher consumer surplus iff some label mass is
//                 strictly below it.
struct Bounds {
  Rational lambda_lower;
  Rational lambda_upper;
  PriceIndex i_bar;   // largest maximizer of v_i x̄_i above the uniform price
  PriceIndex i_low;   // smallest minimizer of the lower-bound expression
  PriceIndex i_star;  // uniform monopoly price index
  Rational u_star;    // consumer surplus under uniform pricing
  Rational pi_star;   // producer surplus under uniform pricing
};

// lambda_lower = min_{v_j <= v_{i*}} (v_ī x̄_ī)/v_j + 1 - x̄_j, ranging over the
// full grid (zero-mass coordinates included). lambda_upper per the analogous
// max over v_j < v_{i*}, or 0 when no valuation sits below the uniform price.
// Throws UniformPriceAtTop when no consumer has a valuation strictly above
// v_{i*} (u* = 0, every database is trivially worst-case optimal).
inline Bounds compute_bounds(const Market& m) {
  const std::size_t K = m.size();
  Bounds b;
  b.i_star = monopoly_price_index(m);
  if (b.i_star == K || m.tail(b.i_star + 1) == 0) throw UniformPriceAtTop();
  b.u_star = consumer_surplus(m, b.i_star);
  b.pi_star = producer_surplus(m, b.i_star);

  b.i_bar = b.i_star + 1;
  Rational top_rev = revenue(m, b.i_bar);
  for (PriceIndex i = b.i_star + 2; i <= K; ++i) {
    Rational rev = revenue(m, i);
    if (rev >= top_rev) {  // largest maximizer
      top_rev = std::move(rev);
      b.i_bar = i;
    }
  }

  b.i_low = 1;
  b.lambda_lower = top_rev / m.grid().value(1) + 1 - m.tail(1);
  for (PriceIndex j = 2; j <= b.i_star; ++j) {
    Rational term = top_rev / m.grid().value(j) + 1 - m.tail(j);
    if (term < b.lambda_lower) {  // smallest minimizer
      b.lambda_lower = std::move(term);
      b.i_low = j;
    }
  }

  b.lambda_upper = 0;
  const Rational& v_star = m.grid().value(b.i_star);
  for (PriceIndex j = 1; j < b.i_star; ++j) {
    const Rational& v_j = m.grid().value(j);
    Rational cand = 1 - (b.pi_star - v_j * m.tail(j)) / (v_star - v_j);
    if (cand > b.lambda_upper) b.lambda_upper = std::move(cand);
  }
  return b;
}

// Largest number of labels any worst-case-optimal database can carry: the
// largest integer strictly below 1/lambda_lower.
inline Integer max_label_count(const Bounds& b) {
  return largest_integer_below(Rational(1) / b.lambda_lower);
}

// Whether some database other than the trivial one is worst-case optimal.
inline bool nontrivial_wc_nonempty(const Bounds& b) { return b.lambda_lower < Rational(1) / 2; }

// Whether some worst-case-optimal database can strictly improve consumer
// surplus. Implemented as the testable condition lambda_lower < 1/2 and
// lambda_upper > lambda_lower.
inline bool f2_nonempty(const Bounds& b) {
  return nontrivial_wc_nonempty(b) && b.lambda_upper > b.lambda_lower;
}

}  // namespace segguard
