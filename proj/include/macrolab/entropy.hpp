#pragma once

#include <compare>
#include <string>

#include "macrolab/operator.hpp"

namespace macrolab {

/// A real number or a tagged infinity. Reports render infinities as "inf" /
/// "-inf" instead of relying on floating-point infinity formatting.
class ExtendedReal {
 public:
  enum class Kind { finite, plus_infinity, minus_infinity };

  constexpr ExtendedReal(double v = 0.0) : kind_(Kind::finite), value_(v) {}
  static constexpr ExtendedReal plus_infinity() { return ExtendedReal(Kind::plus_infinity); }
  static constexpr ExtendedReal minus_infinity() { return ExtendedReal(Kind::minus_infinity); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  /// Throws std::logic_error on an infinity.
  double value() const;
  constexpr double value_or(double fallback) const { return is_finite() ? value_ : fallback; }

  /// Round-trip decimal ("%.17g") or "inf" / "-inf".
  std::string to_string() const;

  /// Equal infinities cancel to 0.
  friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b);
  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b);
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

 private:
  constexpr explicit ExtendedReal(Kind k) : kind_(k), value_(0.0) {}
  constexpr int rank() const {
    return kind_ == Kind::minus_infinity ? -1 : kind_ == Kind::plus_infinity ? 1 : 0;
  }

  Kind kind_;
  double value_;
};

/// -sum w ln w over eigenvalues >= 1e-15, in nats.
double von_neumann(const DensityMatrixd& rho);

/// tr(rho ln rho - rho ln sigma) in nats; +inf when tr(Pi_ker(sigma) rho) >= 1e-10.
ExtendedReal relative_entropy(const DensityMatrixd& rho, const DensityMatrixd& sigma);

inline constexpr double entropy_eigenvalue_floor = 1e-15;
inline constexpr double support_leak_tolerance = 1e-10;

}  // namespace macrolab
