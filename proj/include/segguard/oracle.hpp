#pragma once

#include <cstddef>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "segguard/lp.hpp"
#include "segguard/segmentation.hpp"

namespace segguard {

// One price per label, indexing into the shared valuation grid.
struct PriceProfile {
  std::vector<PriceIndex> prices;
  bool operator==(const PriceProfile& other) const = default;
};

struct OracleOptions {
  std::size_t max_profiles = 1'000'000;  // guard on K^n
  unsigned threads = 1;                  // profile enumeration is parallelizable
};

// Exact extremum of the objective over all feasible segmentations, computed
// by decomposing the monopolist's best-response correspondence into price
// profiles and solving one small rational LP per profile.
//
// value is the profile-charged optimum (the objective prices segment s at
// profile.prices[s]); witness is the optimal vertex of the winning branch.
// achieved is true when the monopolist's true tie-broken best response at the
// witness reproduces the profile, in which case value is attained exactly.
// On the supremum side, when the winning vertex sits on a tie boundary the
// optimum is approached but not attained; strict_witness then carries a
// tie-break-separated segmentation demonstrating attainable values.
struct OracleResult {
  Rational value;
  PriceProfile profile;
  Segmentation witness;
  bool achieved = false;
  std::optional<Segmentation> strict_witness;
  std::optional<Rational> strict_value;
  PriceIndex max_vertex_price = 0;  // largest true best-response index over branch optima
  std::size_t profiles_enumerated = 0;
  std::size_t lps_solved = 0;
};

namespace detail {

inline std::size_t var_of(std::size_t label, PriceIndex k, std::size_t K) {
  return (label - 1) * K + (k - 1);
}

// Shared feasibility rows of the profile polytope P_p: per-segment
// normalization, per-valuation marginal consistency, and weak optimality of
// the profile price against every other price. Margin rows (against strictly
// higher prices) optionally subtract a slack variable or a fixed delta.
inline LinearProgram profile_polytope(const Market& m, const Database& f,
                                      const std::vector<PriceIndex>& prices,
                                      bool margin_variable, const Rational& fixed_margin) {
  const std::size_t K = m.size();
  const std::size_t n = f.labels();
  LinearProgram lp;
  lp.num_vars = n * K + (margin_variable ? 1 : 0);
  lp.objective.assign(lp.num_vars, Rational(0));

  for (std::size_t s = 1; s <= n; ++s) {
    LpConstraint norm{std::vector<Rational>(lp.num_vars, Rational(0)), ConstraintSense::Eq,
                      Rational(1)};
    for (PriceIndex k = 1; k <= K; ++k) norm.coeffs[var_of(s, k, K)] = 1;
    lp.constraints.push_back(std::move(norm));
  }
  for (PriceIndex k = 1; k <= K; ++k) {
    LpConstraint marg{std::vector<Rational>(lp.num_vars, Rational(0)), ConstraintSense::Eq,
                      m.mass(k)};
    for (std::size_t s = 1; s <= n; ++s) marg.coeffs[var_of(s, k, K)] = f.mass(s);
    lp.constraints.push_back(std::move(marg));
  }
  for (std::size_t s = 1; s <= n; ++s) {
    const PriceIndex p = prices[s - 1];
    const Rational& vp = m.grid().value(p);
    for (PriceIndex i = 1; i <= K; ++i) {
      if (i == p) continue;
      LpConstraint opt{std::vector<Rational>(lp.num_vars, Rational(0)), ConstraintSense::Ge,
                       Rational(0)};
      for (PriceIndex j = p; j <= K; ++j) opt.coeffs[var_of(s, j, K)] += vp;
      const Rational& vi = m.grid().value(i);
      for (PriceIndex j = i; j <= K; ++j) opt.coeffs[var_of(s, j, K)] -= vi;
      if (i > p) {
        if (margin_variable)
          opt.coeffs[n * K] = -1;
        else if (fixed_margin != 0)
          opt.rhs = fixed_margin;
      }
      lp.constraints.push_back(std::move(opt));
    }
  }
  if (margin_variable) {
    LpConstraint cap{std::vector<Rational>(lp.num_vars, Rational(0)), ConstraintSense::Le,
                     Rational(1)};
    cap.coeffs[n * K] = 1;
    lp.constraints.push_back(std::move(cap));
  }
  return lp;
}

// Objective alpha * CS + (1 - alpha) * PS, charging price prices[s] in
// segment s (alpha = 1 is plain consumer surplus).
inline void set_weighted_objective(LinearProgram& lp, const Market& m, const Database& f,
                                   const std::vector<PriceIndex>& prices, const Rational& alpha) {
  const std::size_t K = m.size();
  for (std::size_t s = 1; s <= f.labels(); ++s) {
    const PriceIndex p = prices[s - 1];
    const Rational& vp = m.grid().value(p);
    for (PriceIndex j = p; j <= K; ++j)
      lp.objective[var_of(s, j, K)] =
          f.mass(s) * (alpha * (m.grid().value(j) - vp) + (1 - alpha) * vp);
  }
}

inline Segmentation vertex_to_segmentation(const Market& m, const Database& f,
                                           const std::vector<Rational>& point) {
  const std::size_t K = m.size();
  std::vector<Market> conditionals;
  conditionals.reserve(f.labels());
  for (std::size_t s = 1; s <= f.labels(); ++s) {
    std::vector<Rational> masses(point.begin() + static_cast<std::ptrdiff_t>((s - 1) * K),
                                 point.begin() + static_cast<std::ptrdiff_t>(s * K));
    conditionals.emplace_back(m.grid(), std::move(masses));
  }
  return Segmentation{f, std::move(conditionals)};
}

inline std::vector<PriceIndex> best_response_profile(const Segmentation& seg) {
  std::vector<PriceIndex> br;
  br.reserve(seg.conditionals.size());
  for (const Market& cond : seg.conditionals) br.push_back(monopoly_price_index(cond));
  return br;
}

struct BranchOutcome {
  bool feasible = false;
  Rational value;
  std::size_t profile_index = 0;
  std::vector<Rational> vertex;
  std::vector<PriceIndex> br;  // true best responses at the vertex
};

struct ChunkResult {
  std::optional<BranchOutcome> best;
  PriceIndex max_vertex_price = 0;
  std::size_t lps_solved = 0;
};

}  // namespace detail

enum class OracleDirection { Infimum, Supremum };

inline OracleResult oracle_extremum(const Market& m, const Database& f, const Rational& alpha,
                                    OracleDirection dir, const OracleOptions& opts = {}) {
  const std::size_t K = m.size();
  const std::size_t n = f.labels();

  Integer total = 1;
  for (std::size_t s = 0; s < n; ++s) total *= Integer(K);
  if (total > Integer(opts.max_profiles))
    throw EnumerationTooLarge(to_string(Rational(total)) + " profiles, limit " +
                              std::to_string(opts.max_profiles));

  // Prices above the last positive aggregate mass are weakly dominated; their
  // polytopes are redundant and skipped.
  PriceIndex kmax = K;
  while (kmax > 1 && m.mass(kmax) == 0) --kmax;
  std::size_t count = 1;
  for (std::size_t s = 0; s < n; ++s) count *= kmax;

  const auto profile_of = [&](std::size_t index) {
    std::vector<PriceIndex> prices(n);
    for (std::size_t s = n; s-- > 0;) {  // label 1 is the most significant digit
      prices[s] = static_cast<PriceIndex>(index % kmax) + 1;
      index /= kmax;
    }
    return prices;
  };

  const bool sup = dir == OracleDirection::Supremum;

  const auto evaluate_branch = [&](std::size_t index, detail::ChunkResult& chunk) {
    const std::vector<PriceIndex> prices = profile_of(index);
    if (sup) {
      // Branch admissible only if some point strictly separates the profile
      // price from every higher price in every segment: otherwise tie-breaking
      // against consumers never realizes this profile.
      LinearProgram qual = detail::profile_polytope(m, f, prices, true, Rational(0));
      qual.objective[n * K] = 1;
      qual.maximize = true;
      ++chunk.lps_solved;
      const LpResult qr = solve_lp(qual);
      if (qr.status != LpStatus::Optimal || qr.value <= 0) return;
    }
    LinearProgram lp = detail::profile_polytope(m, f, prices, false, Rational(0));
    detail::set_weighted_objective(lp, m, f, prices, alpha);
    lp.maximize = sup;
    ++chunk.lps_solved;
    LpResult res = solve_lp(lp);
    if (res.status == LpStatus::Infeasible) return;
    if (res.status != LpStatus::Optimal) throw Error("profile polytope unbounded");

    detail::BranchOutcome out;
    out.feasible = true;
    out.value = std::move(res.value);
    out.profile_index = index;
    out.vertex = std::move(res.point);
    {
      const Segmentation seg = detail::vertex_to_segmentation(m, f, out.vertex);
      out.br = detail::best_response_profile(seg);
    }
    for (PriceIndex p : out.br)
      if (p > chunk.max_vertex_price) chunk.max_vertex_price = p;
    const bool better =
        !chunk.best ||
        (sup ? out.value > chunk.best->value : out.value < chunk.best->value);
    if (better) chunk.best = std::move(out);  // ties keep the lex-smaller profile
  };

  const unsigned threads =
      opts.threads > 1 ? static_cast<unsigned>(std::min<std::size_t>(opts.threads, count)) : 1;
  std::vector<detail::ChunkResult> chunks(threads);
  if (threads == 1) {
    for (std::size_t t = 0; t < count; ++t) evaluate_branch(t, chunks[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned c = 0; c < threads; ++c) {
      pool.emplace_back([&, c] {
        for (std::size_t t = c; t < count; t += threads) evaluate_branch(t, chunks[c]);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  // Deterministic reduction: (value, lexicographic profile) total order.
  detail::ChunkResult merged;
  for (detail::ChunkResult& chunk : chunks) {
    merged.lps_solved += chunk.lps_solved;
    if (chunk.max_vertex_price > merged.max_vertex_price)
      merged.max_vertex_price = chunk.max_vertex_price;
    if (!chunk.best) continue;
    const bool better =
        !merged.best ||
        (sup ? chunk.best->value > merged.best->value : chunk.best->value < merged.best->value) ||
        (chunk.best->value == merged.best->value &&
         chunk.best->profile_index < merged.best->profile_index);
    if (better) merged.best = std::move(chunk.best);
  }
  if (!merged.best) throw Error("no feasible price profile; inputs inconsistent");

  OracleResult result{merged.best->value,
                      PriceProfile{profile_of(merged.best->profile_index)},
                      detail::vertex_to_segmentation(m, f, merged.best->vertex),
                      false,
                      std::nullopt,
                      std::nullopt,
                      merged.max_vertex_price,
                      count,
                      merged.lps_solved};
  result.achieved = merged.best->br == result.profile.prices;

  if (sup && !result.achieved) {
    // Re-solve with a fixed strictness margin against higher prices, shrinking
    // the margin until the separated optimum lands above the uniform-pricing
    // value whenever the supremum does.
    const PriceIndex i0 = monopoly_price_index(m);
    const Rational uniform = alpha * consumer_surplus(m, i0) + (1 - alpha) * revenue(m, i0);
    for (int mm = 1; mm <= 64; ++mm) {
      const Rational delta = Rational(1) / (Integer(1) << mm);
      LinearProgram lp = detail::profile_polytope(m, f, result.profile.prices, false, delta);
      detail::set_weighted_objective(lp, m, f, result.profile.prices, alpha);
      lp.maximize = true;
      ++result.lps_solved;
      const LpResult res = solve_lp(lp);
      if (res.status != LpStatus::Optimal) continue;
      Segmentation seg = detail::vertex_to_segmentation(m, f, res.point);
      if (detail::best_response_profile(seg) != result.profile.prices) continue;
      if (result.value > uniform && res.value <= uniform) continue;  // tighten further
      result.strict_witness = std::move(seg);
      result.strict_value = res.value;
      break;
    }
  }
  return result;
}

inline OracleResult worst_case_cs(const Market& m, const Database& f,
                                  const OracleOptions& opts = {}) {
  return oracle_extremum(m, f, Rational(1), OracleDirection::Infimum, opts);
}

inline OracleResult best_case_cs(const Market& m, const Database& f,
                                 const OracleOptions& opts = {}) {
  return oracle_extremum(m, f, Rational(1), OracleDirection::Supremum, opts);
}

inline OracleResult worst_case_weighted(const Market& m, const Database& f, const Rational& alpha,
                                        const OracleOptions& opts = {}) {
  if (alpha < Rational(1) / 2 || alpha > 1) throw AlphaOutOfRange(to_string(alpha));
  return oracle_extremum(m, f, alpha, OracleDirection::Infimum, opts);
}

inline OracleResult best_case_weighted(const Market& m, const Database& f, const Rational& alpha,
                                       const OracleOptions& opts = {}) {
  if (alpha < Rational(1) / 2 || alpha > 1) throw AlphaOutOfRange(to_string(alpha));
  return oracle_extremum(m, f, alpha, OracleDirection::Supremum, opts);
}

// Membership verdicts under the worst-case objective, decided entirely by the
// oracle (no threshold formulas): a database is worst-case optimal iff the
// infimum equals the uniform-pricing value, and can strictly improve iff the
// supremum exceeds it.
struct OracleVerdict {
  bool wc = false;
  bool f2 = false;
  Rational uniform_value;
  OracleResult worst;
  std::optional<OracleResult> best;
};

inline OracleVerdict oracle_classify(const Market& m, const Database& f, const Rational& alpha,
                                     const OracleOptions& opts = {}) {
  const PriceIndex i0 = monopoly_price_index(m);
  Rational uniform = alpha * consumer_surplus(m, i0) + (1 - alpha) * revenue(m, i0);
  OracleResult worst = oracle_extremum(m, f, alpha, OracleDirection::Infimum, opts);
  const bool wc = worst.value == uniform;
  std::optional<OracleResult> best;
  bool f2 = false;
  if (wc) {
    best = oracle_extremum(m, f, alpha, OracleDirection::Supremum, opts);
    f2 = best->value > uniform;
  }
  return OracleVerdict{wc, f2, std::move(uniform), std::move(worst), std::move(best)};
}

}  // namespace segguard
