#include "macrolab/entropy.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace macrolab {

double ExtendedReal::value() const {
  if (!is_finite()) throw std::logic_error("ExtendedReal::value() called on an infinity");
  return value_;
}

std::string ExtendedReal::to_string() const {
  switch (kind_) {
    case Kind::plus_infinity:
      return "inf";
    case Kind::minus_infinity:
      return "-inf";
    case Kind::finite:
      break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_finite() && b.is_finite()) return ExtendedReal(a.value_ - b.value_);
  const int r = a.rank() - b.rank();
  if (r > 0) return ExtendedReal::plus_infinity();
  if (r < 0) return ExtendedReal::minus_infinity();
  return ExtendedReal(0.0);
}

std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.rank() != b.rank()) return a.rank() <=> b.rank();
  if (!a.is_finite()) return std::partial_ordering::equivalent;
  return a.value_ <=> b.value_;
}

double von_neumann(const DensityMatrixd& rho) {
  const Eigen::VectorXd w = eig(rho.op()).values;
  double s = 0.0;
  for (double x : w) {
    if (x >= entropy_eigenvalue_floor) s -= x * std::log(x);
  }
  return s;
}

ExtendedReal relative_entropy(const DensityMatrixd& rho, const DensityMatrixd& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("relative_entropy: dims " + std::to_string(rho.dim()) + " and " +
                         std::to_string(sigma.dim()));
  }
  const auto sd = eig(sigma.op());
  const double cut = tolerance::support * sd.values.cwiseAbs().maxCoeff();
  const Eigen::VectorXd weights = sd.diagonal_in_basis(rho.matrix());

  double leak = 0.0;
  double cross = 0.0;  // tr(rho ln sigma)
  for (Index i = 0; i < sd.dim(); ++i) {
    if (sd.values(i) > cut) {
      cross += weights(i) * std::log(sd.values(i));
    } else {
      leak += weights(i);
    }
  }
  if (leak >= support_leak_tolerance) return ExtendedReal::plus_infinity();
  return ExtendedReal(-von_neumann(rho) - cross);
}

}  // namespace macrolab
