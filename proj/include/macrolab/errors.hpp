#pragma once

#include <stdexcept>
#include <string>

namespace macrolab {

/// Input violates a structural requirement (non-Hermitian, mismatched dims).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  NotHermitianError(const std::string& what, double max_asymmetry)
      : std::invalid_argument(what), max_asymmetry_(max_asymmetry) {}
  double max_asymmetry() const noexcept { return max_asymmetry_; }

 private:
  double max_asymmetry_;
};

/// A state-valued input failed trace/positivity checks.
class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Function evaluated outside its domain (log of a non-PSD operator, eps outside (0,1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested dimension exceeds the configured cap.
class ResourceError : public std::length_error {
 public:
  ResourceError(const std::string& what, long long requested_dim)
      : std::length_error(what), requested_dim_(requested_dim) {}
  long long requested_dim() const noexcept { return requested_dim_; }

 private:
  long long requested_dim_;
};

/// Kraus operators do not satisfy sum K^dagger K = 1.
class InvalidChannelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double condition_number)
      : std::runtime_error(what), condition_number_(condition_number) {}
  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

/// MaxEnt target lies outside (or on the boundary of) the achievable expectation set.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, bool near_extremal)
      : std::runtime_error(what), near_extremal_(near_extremal) {}
  /// True when the residual was still shrinking as |lambda| diverged, i.e. the
  /// target sits (numerically) on the boundary of the feasible set.
  bool near_extremal() const noexcept { return near_extremal_; }

 private:
  bool near_extremal_;
};

}  // namespace macrolab
