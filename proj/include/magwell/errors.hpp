#pragma once

#include <stdexcept>
#include <string>

namespace magwell {

// Input outside the mathematical domain of an operation (negative index,
// energy above threshold, non-positive physical parameter, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Inconsistent or unusable configuration (bad cutoff, grid too coarse, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative or adaptive method failed to reach its target accuracy.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  /// Best accuracy (or last iterate) reached before giving up.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace magwell
