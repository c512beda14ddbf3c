#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace segguard {

// Base of every domain validation / precondition failure. Each subclass
// carries the offending index where one exists (1-based, matching the
// public grid/label indexing).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class GridNotIncreasing : public Error {
 public:
  std::size_t index;
  explicit GridNotIncreasing(std::size_t k)
      : Error("valuation grid not strictly increasing and positive at index " +
              std::to_string(k)),
        index(k) {}
};

class NegativeMass : public Error {
 public:
  std::size_t index;
  explicit NegativeMass(std::size_t k)
      : Error("negative mass at index " + std::to_string(k)), index(k) {}
};

class MassNotOne : public Error {
 public:
  explicit MassNotOne(const std::string& sum)
      : Error("masses sum to " + sum + ", expected exactly 1") {}
};

class IndexOutOfRange : public Error {
 public:
  std::size_t index;
  explicit IndexOutOfRange(std::size_t k)
      : Error("index " + std::to_string(k) + " out of range"), index(k) {}
};

class EmptySupport : public Error {
 public:
  EmptySupport() : Error("support set must be non-empty") {}
};

class AlphaOutOfRange : public Error {
 public:
  explicit AlphaOutOfRange(const std::string& alpha)
      : Error("alpha " + alpha + " outside [1/2, 1]") {}
};

// Raised when the uniform monopoly price leaves no consumer strictly above it
// (in particular when it sits at the top of the grid). Consumer surplus under
// uniform pricing is zero, every database is trivially worst-case optimal,
// and the robust bounds are undefined.
class UniformPriceAtTop : public Error {
 public:
  UniformPriceAtTop()
      : Error("uniform monopoly price leaves no mass above it; bounds undefined") {}
};

class InconsistentMarginals : public Error {
 public:
  std::size_t index;       // valuation index with the worst residual
  std::string residual;    // exact residual at that coordinate
  InconsistentMarginals(std::size_t k, const std::string& r)
      : Error("segmentation inconsistent with market marginals at valuation index " +
              std::to_string(k) + " (residual " + r + ")"),
        index(k),
        residual(r) {}
};

class LabelNotBinding : public Error {
 public:
  std::size_t label;
  explicit LabelNotBinding(std::size_t s)
      : Error("label " + std::to_string(s) +
              " mass exceeds the lower bound; no surplus-reducing segmentation exists"),
        label(s) {}
};

class LabelNotQualifying : public Error {
 public:
  std::size_t label;
  explicit LabelNotQualifying(std::size_t s)
      : Error("label " + std::to_string(s) +
              " mass is not below the upper bound; no surplus-improving segmentation exists"),
        label(s) {}
};

class TrivialDatabase : public Error {
 public:
  TrivialDatabase()
      : Error("database has a single label; construction needs at least two") {}
};

class NotWorstCaseOptimal : public Error {
 public:
  NotWorstCaseOptimal()
      : Error("database is not worst-case optimal; improving construction undefined") {}
};

class EnumerationTooLarge : public Error {
 public:
  explicit EnumerationTooLarge(const std::string& detail)
      : Error("price-profile enumeration too large: " + detail) {}
};

}  // namespace segguard
