#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "segguard/bounds.hpp"
#include "segguard/market.hpp"

namespace segguard {

// A distribution of labels over consumers: strictly positive masses summing
// to exactly one. The single-label database models a monopolist without data.
class Database {
 public:
  explicit Database(std::vector<Rational> masses) : masses_(std::move(masses)) {
    if (masses_.empty()) throw IndexOutOfRange(0);
    Rational sum = 0;
    for (std::size_t s = 0; s < masses_.size(); ++s) {
      if (masses_[s] <= 0) throw NegativeMass(s + 1);
      sum += masses_[s];
    }
    if (sum != 1) throw MassNotOne(to_string(sum));
  }

  std::size_t labels() const { return masses_.size(); }
  const std::vector<Rational>& masses() const { return masses_; }
  const Rational& mass(std::size_t s) const {  // 1-based label
    if (s < 1 || s > masses_.size()) throw IndexOutOfRange(s);
    return masses_[s - 1];
  }
  Rational min_mass() const {
    Rational m = masses_.front();
    for (const Rational& f : masses_)
      if (f < m) m = f;
    return m;
  }

  bool operator==(const Database& other) const = default;

 private:
  std::vector<Rational> masses_;
};

inline Database trivial_database() { return Database({Rational(1)}); }

struct Classification {
  bool in_wc = false;          // worst-case consumer surplus equals the uniform level
  bool in_f2 = false;          // in WC and can strictly improve consumer surplus
  bool undominated = false;    // F2 when F2 is non-empty for the market, else WC
  std::optional<std::size_t> binding_label;  // smallest violating / qualifying label
};

// Threshold boundaries are strict exactly as stated: f_s = lambda_lower fails
// worst-case optimality and f_s = lambda_upper fails the improvement
// condition. Exact arithmetic makes both decidable.
inline Classification classify_with_bounds(const Bounds& b, const Database& f) {
  Classification c;
  c.in_wc = true;
  for (std::size_t s = 1; s <= f.labels(); ++s) {
    if (f.mass(s) <= b.lambda_lower) {
      c.in_wc = false;
      c.binding_label = s;
      break;
    }
  }
  if (c.in_wc) {
    for (std::size_t s = 1; s <= f.labels(); ++s) {
      if (f.mass(s) < b.lambda_upper) {
        c.in_f2 = true;
        c.binding_label = s;
        break;
      }
    }
  }
  c.undominated = f2_nonempty(b) ? c.in_f2 : c.in_wc;
  return c;
}

inline Classification classify(const Market& m, const Database& f) {
  return classify_with_bounds(compute_bounds(m), f);
}

struct PolicyCheck {
  bool worst_case_optimal = true;
  std::optional<std::size_t> violator;  // 0-based position of the first failing database
};

// A policy (a set of permitted databases) is worst-case optimal iff every
// member classifies into WC. The empty policy is vacuously optimal.
inline PolicyCheck policy_is_worst_case_optimal(const Market& m,
                                                const std::vector<Database>& policy) {
  PolicyCheck result;
  if (policy.empty()) return result;
  const Bounds b = compute_bounds(m);
  for (std::size_t i = 0; i < policy.size(); ++i) {
    if (!classify_with_bounds(b, policy[i]).in_wc) {
      result.worst_case_optimal = false;
      result.violator = i;
      return result;
    }
  }
  return result;
}

// Classification under the alpha-weighted objective coincides with the
// consumer-surplus classification for every alpha in [1/2, 1]; the operation
// exists so the oracle can verify the equivalence on the weighted objective.
inline Classification classify_weighted(const Market& m, const Database& f,
                                        const Rational& alpha) {
  if (alpha < Rational(1) / 2 || alpha > 1) throw AlphaOutOfRange(to_string(alpha));
  return classify(m, f);
}

}  // namespace segguard
