#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "segguard/errors.hpp"
#include "segguard/rational.hpp"

namespace segguard {

enum class ConstraintSense { Eq, Ge, Le };

struct LpConstraint {
  std::vector<Rational> coeffs;
  ConstraintSense sense;
  Rational rhs;
};

// min (or max) objective . x  subject to the constraints and x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<LpConstraint> constraints;
  std::vector<Rational> objective;
  bool maximize = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> point;  // a deterministic optimal vertex when Optimal
};

// Evaluates all constraints of `lp` at `point` exactly.
inline bool satisfies_constraints(const LinearProgram& lp, const std::vector<Rational>& point) {
  if (point.size() != lp.num_vars) return false;
  for (const Rational& x : point)
    if (x < 0) return false;
  for (const LpConstraint& c : lp.constraints) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += c.coeffs[j] * point[j];
    switch (c.sense) {
      case ConstraintSense::Eq:
        if (lhs != c.rhs) return false;
        break;
      case ConstraintSense::Ge:
        if (lhs < c.rhs) return false;
        break;
      case ConstraintSense::Le:
        if (lhs > c.rhs) return false;
        break;
    }
  }
  return true;
}

// Exact two-phase primal simplex over rationals with Bland's least-index
// anti-cycling rule throughout (deterministic vertex, no floating point).
// Artificial variables are dropped as soon as they leave the basis.
inline LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.constraints.size();
  const std::size_t n = lp.num_vars;

  // Column layout: [0, n) structural, [n, n + slacks) slack/surplus,
  // [art_begin, ncols) artificial.
  std::size_t num_slack = 0;
  for (const LpConstraint& c : lp.constraints)
    if (c.sense != ConstraintSense::Eq) ++num_slack;
  const std::size_t art_begin = n + num_slack;

  std::vector<std::vector<Rational>> tab(m);
  std::vector<Rational> rhs(m);
  std::vector<std::size_t> basis(m);
  std::vector<bool> banned;  // artificials removed from the problem

  std::size_t next_slack = n;
  std::size_t num_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const LpConstraint& c = lp.constraints[i];
    if (c.coeffs.size() != n) throw Error("constraint arity mismatch");
    tab[i].assign(art_begin, Rational(0));
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = c.coeffs[j];
    Rational slack_sign = 0;
    std::size_t slack_col = 0;
    if (c.sense != ConstraintSense::Eq) {
      slack_col = next_slack++;
      slack_sign = c.sense == ConstraintSense::Le ? 1 : -1;
      tab[i][slack_col] = slack_sign;
    }
    rhs[i] = c.rhs;
    if (rhs[i] < 0) {
      for (Rational& v : tab[i]) v = -v;
      rhs[i] = -rhs[i];
      slack_sign = -slack_sign;
    }
    if (slack_sign == 1) {
      basis[i] = slack_col;  // slack starts basic
    } else {
      basis[i] = art_begin + num_art++;  // row needs an artificial
    }
  }
  const std::size_t ncols = art_begin + num_art;
  banned.assign(ncols, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= art_begin) {
      for (std::size_t r = 0; r < m; ++r) tab[r].resize(ncols, Rational(0));
      break;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= art_begin) tab[i][basis[i]] = 1;

  const auto pivot = [&](std::size_t row, std::size_t col, std::vector<Rational>& z) {
    const Rational inv = Rational(1) / tab[row][col];
    for (Rational& v : tab[row]) v *= inv;
    rhs[row] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || tab[i][col] == 0) continue;
      const Rational f = tab[i][col];
      for (std::size_t j = 0; j < ncols; ++j)
        if (tab[row][j] != 0) tab[i][j] -= f * tab[row][j];
      rhs[i] -= f * rhs[row];
    }
    if (!z.empty() && z[col] != 0) {
      const Rational f = z[col];
      for (std::size_t j = 0; j < ncols; ++j)
        if (tab[row][j] != 0) z[j] -= f * tab[row][j];
    }
    if (basis[row] >= art_begin) banned[basis[row]] = true;  // drop leaving artificial
    basis[row] = col;
  };

  // Runs Bland's rule to optimality on reduced-cost row z. Returns false on
  // unboundedness.
  const auto run = [&](std::vector<Rational>& z) -> bool {
    while (true) {
      std::size_t enter = ncols;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (banned[j]) continue;
        if (z[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == ncols) return true;
      std::size_t leave = m;
      Rational best_ratio = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (tab[i][enter] <= 0) continue;
        Rational ratio = rhs[i] / tab[i][enter];
        if (leave == m || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          best_ratio = std::move(ratio);
          leave = i;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter, z);
    }
  };

  const auto reduced_costs = [&](const std::vector<Rational>& cost) {
    std::vector<Rational> z(cost);
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& cb = cost[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < ncols; ++j)
        if (tab[i][j] != 0) z[j] -= cb * tab[i][j];
    }
    return z;
  };

  LpResult result;
  if (num_art > 0) {
    std::vector<Rational> phase1_cost(ncols, Rational(0));
    for (std::size_t j = art_begin; j < ncols; ++j) phase1_cost[j] = 1;
    std::vector<Rational> z1 = reduced_costs(phase1_cost);
    if (!run(z1)) throw Error("phase-1 simplex unbounded");  // bounded below by zero
    Rational infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] >= art_begin) infeas += rhs[i];
    if (infeas != 0) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Pivot out any artificial stuck in the basis at level zero; rows with no
    // eligible column are redundant and stay inert.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art_begin) continue;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (!banned[j] && tab[i][j] != 0) {
          std::vector<Rational> none;
          pivot(i, j, none);
          break;
        }
      }
    }
    // No artificial may re-enter; any still basic sits at zero in a redundant
    // row and stays inert (its reduced cost is zero while basic).
    for (std::size_t j = art_begin; j < ncols; ++j) banned[j] = true;
  }

  std::vector<Rational> cost(ncols, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    cost[j] = lp.maximize ? Rational(-lp.objective[j]) : lp.objective[j];
  std::vector<Rational> z2 = reduced_costs(cost);
  if (!run(z2)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.point.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) result.point[basis[i]] = rhs[i];
  result.value = 0;
  for (std::size_t j = 0; j < n; ++j) result.value += lp.objective[j] * result.point[j];
  return result;
}

}  // namespace segguard
