#pragma once

// Seeded random ensembles.
//
// Stream contract: a draw is a pure function of (seed, index). The engine is
// std::mt19937_64 (bit-exact across standard libraries) seeded with
// splitmix64(splitmix64(seed) ^ index). Uniforms take the top 53 bits of one
// engine output; normals come from Box-Muller on pairs of uniforms, using
// both outputs in order. No std::*_distribution is used, since those differ
// between library implementations.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "macrolab/operator.hpp"

namespace macrolab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t index)
      : engine_(splitmix64(splitmix64(seed) ^ index)) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return z;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    return r * std::cos(phi);
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

template <class Real = double>
CMatrix<Real> gaussian_matrix(RandomStream& rng, Index rows, Index cols) {
  CMatrix<Real> g(rows, cols);
  // Column-major fill order is part of the stream contract.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = std::complex<Real>(Real(re), Real(im));
    }
  }
  return g;
}

/// Hilbert-Schmidt ensemble: G G^dagger / tr, G a dim x rank complex Gaussian.
template <class Real = double>
DensityMatrix<Real> random_density(RandomStream& rng, Index dim, Index rank = 0) {
  const Index r = rank > 0 ? rank : dim;
  const CMatrix<Real> g = gaussian_matrix<Real>(rng, dim, r);
  CMatrix<Real> rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix<Real>::assume_valid(Hermitian<Real>::symmetrized(rho));
}

template <class Real = double>
DensityMatrix<Real> random_pure(RandomStream& rng, Index dim) {
  return random_density<Real>(rng, dim, 1);
}

/// Haar unitary: QR of a complex Gaussian with the phases of diag(R) absorbed.
template <class Real = double>
CMatrix<Real> random_unitary(RandomStream& rng, Index dim) {
  const CMatrix<Real> g = gaussian_matrix<Real>(rng, dim, dim);
  Eigen::HouseholderQR<CMatrix<Real>> qr(g);
  CMatrix<Real> q = qr.householderQ() * CMatrix<Real>::Identity(dim, dim);
  const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    const std::complex<Real> d = r(k, k);
    const Real a = std::abs(d);
    if (a > Real(0)) q.col(k) *= d / a;
  }
  return q;
}

/// GUE-style draw (G + G^dagger) / 2.
template <class Real = double>
Hermitian<Real> random_hermitian(RandomStream& rng, Index dim) {
  return Hermitian<Real>::symmetrized(gaussian_matrix<Real>(rng, dim, dim));
}

/// Gram-Schmidt under (X|Y) = tr(XY), starting from the normalized identity.
/// Returns the orthonormal images of `ops` (identity direction removed).
template <class Real>
std::vector<Hermitian<Real>> trace_orthonormalize(const std::vector<Hermitian<Real>>& ops) {
  std::vector<Hermitian<Real>> basis;
  if (ops.empty()) return basis;
  const Index dim = ops.front().dim();
  const auto unit = Hermitian<Real>::identity(dim) / std::sqrt(Real(dim));
  for (const auto& op : ops) {
    Hermitian<Real> v = op - trace_product(unit, op) * unit;
    for (const auto& b : basis) v -= trace_product(b, v) * b;
    const Real norm = std::sqrt(std::max(trace_product(v, v), Real(0)));
    if (norm < Real(1e-10)) {
      throw ConditioningError("observables are linearly dependent together with the identity",
                              static_cast<double>(norm));
    }
    basis.push_back(v / norm);
  }
  return basis;
}

/// m independent Hermitian Gaussian draws, trace-orthonormalized against the
/// identity and each other. Requires m <= dim^2 - 1.
template <class Real = double>
std::vector<Hermitian<Real>> random_observables(RandomStream& rng, Index dim, Index m) {
  if (m < 0 || m > dim * dim - 1) {
    throw DimensionError("cannot draw " + std::to_string(m) +
                         " independent traceless observables in dim " + std::to_string(dim));
  }
  std::vector<Hermitian<Real>> raw;
  raw.reserve(static_cast<std::size_t>(m));
  for (Index a = 0; a < m; ++a) raw.push_back(random_hermitian<Real>(rng, dim));
  return trace_orthonormalize(raw);
}

/// U diag(u) U^dagger with u_i uniform on [0, 1] and U Haar.
template <class Real = double>
TestOperator<Real> random_test_operator(RandomStream& rng, Index dim) {
  const CMatrix<Real> u = random_unitary<Real>(rng, dim);
  RVector<Real> w(dim);
  for (Index k = 0; k < dim; ++k) w(k) = Real(rng.uniform());
  const CMatrix<Real> m = u * w.template cast<std::complex<Real>>().asDiagonal() * u.adjoint();
  return TestOperator<Real>::assume_valid(Hermitian<Real>::symmetrized(m));
}

/// Kraus operators cut from a random (dim*rank) x dim isometry.
template <class Real = double>
KrausSet<Real> random_kraus(RandomStream& rng, Index dim, Index rank) {
  if (rank < 1) throw DimensionError("Kraus rank must be >= 1");
  const CMatrix<Real> g = gaussian_matrix<Real>(rng, dim * rank, dim);
  Eigen::HouseholderQR<CMatrix<Real>> qr(g);
  const CMatrix<Real> v = qr.householderQ() * CMatrix<Real>::Identity(dim * rank, dim);
  std::vector<CMatrix<Real>> ops;
  ops.reserve(static_cast<std::size_t>(rank));
  for (Index i = 0; i < rank; ++i) ops.push_back(v.block(i * dim, 0, dim, dim));
  return KrausSet<Real>(std::move(ops));
}

}  // namespace macrolab
