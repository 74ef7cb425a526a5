#pragma once

// Dense Hermitian operator algebra on finite-dimensional Hilbert spaces.
//
// Every type is templated on the real scalar; the rest of the library
// instantiates it with double through the aliases at the bottom of this file.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "macrolab/errors.hpp"

namespace macrolab {

using Index = Eigen::Index;

template <class Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <class Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <class Real>
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

namespace tolerance {
inline constexpr double hermiticity = 1e-12;
inline constexpr double trace = 1e-10;
inline constexpr double positivity = 1e-10;
/// Eigenvalues at or below this fraction of the largest |eigenvalue| are kernel.
inline constexpr double support = 1e-12;
inline constexpr double test_spectrum = 1e-10;
inline constexpr double kraus_completeness = 1e-10;
}  // namespace tolerance

inline constexpr long long default_dim_cap = 4096;

namespace detail {

inline std::string format_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace detail

template <class Real>
Real max_asymmetry(const CMatrix<Real>& m) {
  if (m.size() == 0) return Real(0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Self-adjoint dense operator. Construction from a raw matrix checks
/// Hermiticity entrywise and then stores the exactly symmetrized matrix.
template <class Real>
class Hermitian {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Matrix = CMatrix<Real>;

  explicit Hermitian(Matrix m) : m_(std::move(m)) {
    require_square(m_);
    const Real asym = max_asymmetry<Real>(m_);
    if (!(asym <= Real(tolerance::hermiticity))) {
      throw NotHermitianError(
          "operator is not Hermitian: max |H - H^dagger| entry is " +
              detail::format_double(static_cast<double>(asym)),
          static_cast<double>(asym));
    }
    symmetrize();
  }

  /// Hermitian part of a computed matrix; skips the entrywise tolerance check.
  static Hermitian symmetrized(const Matrix& m) {
    require_square(m);
    Matrix h = (m + m.adjoint()) * Scalar(0.5);
    return Hermitian(std::move(h), Trusted{});
  }

  static Hermitian identity(Index dim) {
    return Hermitian(Matrix::Identity(dim, dim), Trusted{});
  }
  static Hermitian zero(Index dim) { return Hermitian(Matrix::Zero(dim, dim), Trusted{}); }
  static Hermitian diagonal(const RVector<Real>& d) {
    Matrix m = d.template cast<Scalar>().asDiagonal();
    return Hermitian(std::move(m), Trusted{});
  }

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Real trace() const { return m_.diagonal().real().sum(); }

  Hermitian& operator+=(const Hermitian& o) {
    require_same_dim(o);
    m_ += o.m_;
    return *this;
  }
  Hermitian& operator-=(const Hermitian& o) {
    require_same_dim(o);
    m_ -= o.m_;
    return *this;
  }
  Hermitian& operator*=(Real s) {
    m_ *= Scalar(s);
    return *this;
  }
  Hermitian& operator/=(Real s) { return *this *= Real(1) / s; }

  friend Hermitian operator+(Hermitian a, const Hermitian& b) { return a += b; }
  friend Hermitian operator-(Hermitian a, const Hermitian& b) { return a -= b; }
  friend Hermitian operator-(Hermitian a) { return a *= Real(-1); }
  friend Hermitian operator*(Real s, Hermitian a) { return a *= s; }
  friend Hermitian operator*(Hermitian a, Real s) { return a *= s; }
  friend Hermitian operator/(Hermitian a, Real s) { return a *= Real(1) / s; }

 private:
  struct Trusted {};
  Hermitian(Matrix m, Trusted) : m_(std::move(m)) {}

  static void require_square(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
      throw DimensionError("operator must be square with dim >= 1, got " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
  }
  void require_same_dim(const Hermitian& o) const {
    if (o.dim() != dim()) {
      throw DimensionError("dimension mismatch: " + std::to_string(dim()) + " vs " +
                           std::to_string(o.dim()));
    }
  }
  void symmetrize() { m_ = ((m_ + m_.adjoint()) * Scalar(0.5)).eval(); }

  Matrix m_;
};

template <class Real>
struct EigenDecomposition {
  RVector<Real> values;   // ascending
  CMatrix<Real> vectors;  // columns
  /// Set when the input was exactly diagonal: column k of `vectors` is the
  /// basis vector e_{source[k]}.
  std::vector<Index> source;

  Index dim() const { return values.size(); }
  bool is_permutation() const { return !source.empty(); }

  /// V diag(fn(w)) V^dagger.
  template <class Fn>
  CMatrix<Real> map(Fn&& fn) const {
    return synthesize(values.unaryExpr(std::forward<Fn>(fn)));
  }
  /// V diag(w) V^dagger for an arbitrary spectrum w (indexed like `values`).
  CMatrix<Real> synthesize(const RVector<Real>& w) const {
    if (is_permutation()) {
      CMatrix<Real> out = CMatrix<Real>::Zero(dim(), dim());
      for (Index k = 0; k < dim(); ++k) out(source[k], source[k]) = w(k);
      return out;
    }
    return vectors * w.template cast<std::complex<Real>>().asDiagonal() * vectors.adjoint();
  }
  CMatrix<Real> reconstruct() const {
    return map([](Real w) { return w; });
  }
  /// Sum of |v_i><v_i| over indices where pred(w_i) holds.
  template <class Pred>
  CMatrix<Real> projector(Pred&& pred) const {
    return map([&](Real w) { return pred(w) ? Real(1) : Real(0); });
  }
  /// Re <v_i| m |v_i> for every eigenvector.
  RVector<Real> diagonal_in_basis(const CMatrix<Real>& m) const {
    RVector<Real> out(dim());
    if (is_permutation()) {
      for (Index k = 0; k < dim(); ++k) out(k) = m(source[k], source[k]).real();
      return out;
    }
    const CMatrix<Real> mv = m * vectors;
    for (Index k = 0; k < dim(); ++k) out(k) = vectors.col(k).dot(mv.col(k)).real();
    return out;
  }
};

/// Spectral decomposition with ascending eigenvalues. Exactly diagonal input
/// (all off-diagonal entries zero) is decomposed by sorting, which keeps
/// tensor powers of commuting states cheap at large dimension.
template <class Real>
EigenDecomposition<Real> eig(const Hermitian<Real>& h) {
  const auto& m = h.matrix();
  const Index n = h.dim();
  bool is_diagonal = true;
  for (Index j = 0; j < n && is_diagonal; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i != j && m(i, j) != std::complex<Real>(0)) {
        is_diagonal = false;
        break;
      }
    }
  }
  EigenDecomposition<Real> out;
  if (is_diagonal) {
    out.source.resize(static_cast<std::size_t>(n));
    std::iota(out.source.begin(), out.source.end(), Index{0});
    std::stable_sort(out.source.begin(), out.source.end(),
                     [&](Index a, Index b) { return m(a, a).real() < m(b, b).real(); });
    out.values.resize(n);
    out.vectors = CMatrix<Real>::Zero(n, n);
    for (Index k = 0; k < n; ++k) {
      const Index src = out.source[static_cast<std::size_t>(k)];
      out.values(k) = m(src, src).real();
      out.vectors(src, k) = std::complex<Real>(1);
    }
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed to converge (dim " + std::to_string(n) + ")");
  }
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  return out;
}

template <class Real>
EigenDecomposition<Real> eig(const CMatrix<Real>& m) {
  return eig(Hermitian<Real>(m));
}

template <class Real>
RVector<Real> eigenvalues(const Hermitian<Real>& h) {
  return eig(h).values;
}

enum class SpectralFunction { exp, log_on_support };

template <class Real, class Fn>
Hermitian<Real> spectral_map(const Hermitian<Real>& h, Fn&& fn) {
  return Hermitian<Real>::symmetrized(eig(h).map(std::forward<Fn>(fn)));
}

template <class Real>
Hermitian<Real> matrix_exp(const Hermitian<Real>& h) {
  return spectral_map(h, [](Real w) { return std::exp(w); });
}

/// Natural log on the support; kernel directions map to 0.
template <class Real>
Hermitian<Real> log_on_support(const Hermitian<Real>& h) {
  const auto d = eig(h);
  const Real lo = d.values.minCoeff();
  if (lo < -Real(tolerance::positivity)) {
    throw DomainError("log requested on an operator with eigenvalue " +
                      detail::format_double(static_cast<double>(lo)));
  }
  const Real cut = Real(tolerance::support) * d.values.cwiseAbs().maxCoeff();
  return Hermitian<Real>::symmetrized(
      d.map([cut](Real w) { return w > cut ? std::log(w) : Real(0); }));
}

template <class Real>
Hermitian<Real> op_function(const Hermitian<Real>& h, SpectralFunction fn) {
  switch (fn) {
    case SpectralFunction::exp:
      return matrix_exp(h);
    case SpectralFunction::log_on_support:
      return log_on_support(h);
  }
  throw std::logic_error("unknown spectral function");
}

/// First divided differences of exp(w - shift):
/// L_ij = (e^{w_i} - e^{w_j}) / (w_i - w_j), L_ii = e^{w_i}.
template <class Real>
RMatrix<Real> exp_divided_differences(const RVector<Real>& w, Real shift = Real(0)) {
  const Index n = w.size();
  RMatrix<Real> l(n, n);
  for (Index j = 0; j < n; ++j) {
    const Real ej = std::exp(w(j) - shift);
    for (Index i = 0; i < n; ++i) {
      const Real delta = w(i) - w(j);
      l(i, j) = delta == Real(0) ? ej : ej * std::expm1(delta) / delta;
    }
  }
  return l;
}

/// Frechet derivative of exp at A in direction E, given A's decomposition,
/// with exp evaluated at A - shift (result scaled by e^{-shift}).
template <class Real>
CMatrix<Real> frechet_exp(const EigenDecomposition<Real>& a, const CMatrix<Real>& e,
                          Real shift = Real(0)) {
  const CMatrix<Real> e_eig = a.vectors.adjoint() * e * a.vectors;
  const CMatrix<Real> inner =
      exp_divided_differences<Real>(a.values, shift).template cast<std::complex<Real>>().cwiseProduct(e_eig);
  return a.vectors * inner * a.vectors.adjoint();
}

template <class Real>
Hermitian<Real> frechet_exp(const Hermitian<Real>& a, const Hermitian<Real>& e) {
  if (a.dim() != e.dim()) {
    throw DimensionError("frechet_exp: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                         std::to_string(e.dim()));
  }
  return Hermitian<Real>::symmetrized(frechet_exp(eig(a), e.matrix()));
}

/// Re tr(A B) for Hermitian A, B.
template <class Real>
Real trace_product(const Hermitian<Real>& a, const Hermitian<Real>& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace_product: dimension mismatch");
  // tr(AB) = sum_ij A_ij B_ji = sum_ij conj(A_ji) B_ji for Hermitian A.
  return a.matrix().cwiseProduct(b.matrix().transpose()).sum().real();
}

template <class Real>
CMatrix<Real> kron(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <class Real>
Hermitian<Real> tensor(const Hermitian<Real>& a, const Hermitian<Real>& b) {
  return Hermitian<Real>::symmetrized(kron<Real>(a.matrix(), b.matrix()));
}

/// dim^copies, or ResourceError when it exceeds cap.
inline Index checked_power_dim(Index dim, int copies, long long cap = default_dim_cap) {
  if (copies < 1) throw DimensionError("number of copies must be >= 1");
  constexpr long long saturated = std::numeric_limits<long long>::max();
  long long total = 1;
  for (int k = 0; k < copies; ++k) {
    total = total > saturated / static_cast<long long>(dim) ? saturated
                                                             : total * static_cast<long long>(dim);
  }
  if (total > cap) {
    const std::string shown = total == saturated ? "overflow" : std::to_string(total);
    throw ResourceError("tensor power dimension " + std::to_string(dim) + "^" +
                            std::to_string(copies) + " = " + shown + " exceeds cap " +
                            std::to_string(cap),
                        total);
  }
  return static_cast<Index>(total);
}

template <class Real>
Hermitian<Real> tensor_power(const Hermitian<Real>& h, int copies,
                             long long cap = default_dim_cap) {
  checked_power_dim(h.dim(), copies, cap);
  CMatrix<Real> out = h.matrix();
  for (int k = 1; k < copies; ++k) out = kron<Real>(out, h.matrix());
  return Hermitian<Real>::symmetrized(out);
}

/// Sum over copies k of 1 x ... x op(slot k) x ... x 1, with `fill` in the other slots.
template <class Real>
Hermitian<Real> slot_sum(const Hermitian<Real>& op, const Hermitian<Real>& fill, int copies,
                         long long cap = default_dim_cap) {
  if (op.dim() != fill.dim()) throw DimensionError("slot_sum: dimension mismatch");
  const Index total = checked_power_dim(op.dim(), copies, cap);
  CMatrix<Real> sum = CMatrix<Real>::Zero(total, total);
  for (int slot = 0; slot < copies; ++slot) {
    CMatrix<Real> term = slot == 0 ? op.matrix() : fill.matrix();
    for (int k = 1; k < copies; ++k) term = kron<Real>(term, k == slot ? op.matrix() : fill.matrix());
    sum += term;
  }
  return Hermitian<Real>::symmetrized(sum);
}

/// Positive and negative parts H = P - M with P M = 0.
template <class Real>
struct PosNegParts {
  Hermitian<Real> positive;
  Hermitian<Real> negative;
  Real trace_norm;
};

template <class Real>
PosNegParts<Real> pos_neg_parts(const Hermitian<Real>& h) {
  const auto d = eig(h);
  auto pos = Hermitian<Real>::symmetrized(d.map([](Real w) { return w > Real(0) ? w : Real(0); }));
  auto neg = Hermitian<Real>::symmetrized(d.map([](Real w) { return w < Real(0) ? -w : Real(0); }));
  const Real norm = d.values.cwiseAbs().sum();
  return {std::move(pos), std::move(neg), norm};
}

/// Unit-trace positive semidefinite operator.
template <class Real>
class DensityMatrix {
 public:
  explicit DensityMatrix(Hermitian<Real> op) : op_(std::move(op)) {
    const Real tr = op_.trace();
    if (!(std::abs(tr - Real(1)) <= Real(tolerance::trace))) {
      throw InvalidStateError("density matrix trace is " +
                              detail::format_double(static_cast<double>(tr)) + ", expected 1");
    }
    const Real lo = eig(op_).values.minCoeff();
    if (lo < -Real(tolerance::positivity)) {
      throw InvalidStateError("density matrix has negative eigenvalue " +
                              detail::format_double(static_cast<double>(lo)));
    }
  }
  explicit DensityMatrix(CMatrix<Real> m) : DensityMatrix(Hermitian<Real>(std::move(m))) {}

  /// For results of trace- and positivity-preserving constructions.
  static DensityMatrix assume_valid(Hermitian<Real> op) {
    return DensityMatrix(std::move(op), Trusted{});
  }
  static DensityMatrix maximally_mixed(Index dim) {
    return assume_valid(Hermitian<Real>::identity(dim) / Real(dim));
  }
  static DensityMatrix pure(const CVector<Real>& psi) {
    const CVector<Real> n = psi.normalized();
    return assume_valid(Hermitian<Real>::symmetrized(n * n.adjoint()));
  }
  static DensityMatrix diagonal(const RVector<Real>& p) {
    return DensityMatrix(Hermitian<Real>::diagonal(p));
  }

  Index dim() const { return op_.dim(); }
  const Hermitian<Real>& op() const { return op_; }
  const CMatrix<Real>& matrix() const { return op_.matrix(); }
  operator const Hermitian<Real>&() const { return op_; }

 private:
  struct Trusted {};
  DensityMatrix(Hermitian<Real> op, Trusted) : op_(std::move(op)) {}
  Hermitian<Real> op_;
};

/// Binary measurement effect 0 <= Gamma <= 1.
template <class Real>
class TestOperator {
 public:
  explicit TestOperator(Hermitian<Real> op) : op_(std::move(op)) {
    const auto w = eig(op_).values;
    const Real tol = Real(tolerance::test_spectrum);
    if (w.minCoeff() < -tol || w.maxCoeff() > Real(1) + tol) {
      throw DomainError("test operator spectrum [" +
                        detail::format_double(static_cast<double>(w.minCoeff())) + ", " +
                        detail::format_double(static_cast<double>(w.maxCoeff())) +
                        "] leaves [0, 1]");
    }
  }
  static TestOperator assume_valid(Hermitian<Real> op) { return TestOperator(std::move(op), Trusted{}); }

  Index dim() const { return op_.dim(); }
  const Hermitian<Real>& op() const { return op_; }
  const CMatrix<Real>& matrix() const { return op_.matrix(); }
  operator const Hermitian<Real>&() const { return op_; }

 private:
  struct Trusted {};
  TestOperator(Hermitian<Real> op, Trusted) : op_(std::move(op)) {}
  Hermitian<Real> op_;
};

template <class Real>
DensityMatrix<Real> tensor(const DensityMatrix<Real>& a, const DensityMatrix<Real>& b) {
  return DensityMatrix<Real>::assume_valid(tensor(a.op(), b.op()));
}

template <class Real>
DensityMatrix<Real> tensor_power(const DensityMatrix<Real>& rho, int copies,
                                 long long cap = default_dim_cap) {
  return DensityMatrix<Real>::assume_valid(tensor_power(rho.op(), copies, cap));
}

enum class Subsystem { A, B };

/// Partial trace of an operator on C^{dA} x C^{dB} (A is the leading factor).
template <class Real>
CMatrix<Real> partial_trace(const CMatrix<Real>& m, Index dim_a, Index dim_b, Subsystem keep) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw DimensionError("partial_trace: operator dim " + std::to_string(m.rows()) +
                         " != " + std::to_string(dim_a) + "*" + std::to_string(dim_b));
  }
  if (keep == Subsystem::A) {
    CMatrix<Real> out = CMatrix<Real>::Zero(dim_a, dim_a);
    for (Index b = 0; b < dim_b; ++b) {
      for (Index a = 0; a < dim_a; ++a) {
        for (Index a2 = 0; a2 < dim_a; ++a2) out(a, a2) += m(a * dim_b + b, a2 * dim_b + b);
      }
    }
    return out;
  }
  CMatrix<Real> out = CMatrix<Real>::Zero(dim_b, dim_b);
  for (Index a = 0; a < dim_a; ++a) out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

template <class Real>
DensityMatrix<Real> partial_trace(const DensityMatrix<Real>& rho, Index dim_a, Index dim_b,
                                  Subsystem keep) {
  return DensityMatrix<Real>::assume_valid(
      Hermitian<Real>::symmetrized(partial_trace<Real>(rho.matrix(), dim_a, dim_b, keep)));
}

/// U rho U^dagger.
template <class Real>
DensityMatrix<Real> conjugate(const CMatrix<Real>& u, const DensityMatrix<Real>& rho) {
  return DensityMatrix<Real>::assume_valid(
      Hermitian<Real>::symmetrized(u * rho.matrix() * u.adjoint()));
}

/// 1/2 ||rho - sigma||_1.
template <class Real>
Real trace_distance(const Hermitian<Real>& a, const Hermitian<Real>& b) {
  return Real(0.5) * eig(a - b).values.cwiseAbs().sum();
}

/// Kraus representation of a CPTP map; sum_i K_i^dagger K_i = 1 is enforced.
template <class Real>
class KrausSet {
 public:
  explicit KrausSet(std::vector<CMatrix<Real>> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw InvalidChannelError("Kraus set is empty");
    const Index rows = ops_.front().rows();
    const Index cols = ops_.front().cols();
    CMatrix<Real> sum = CMatrix<Real>::Zero(cols, cols);
    for (const auto& k : ops_) {
      if (k.rows() != rows || k.cols() != cols) {
        throw DimensionError("Kraus operators must share their shape");
      }
      sum += k.adjoint() * k;
    }
    const Real err = (sum - CMatrix<Real>::Identity(cols, cols)).cwiseAbs().maxCoeff();
    if (!(err <= Real(tolerance::kraus_completeness))) {
      throw InvalidChannelError("Kraus set incomplete: max |sum K^dagger K - 1| = " +
                                detail::format_double(static_cast<double>(err)));
    }
  }

  static KrausSet identity(Index dim) { return KrausSet({CMatrix<Real>::Identity(dim, dim)}); }

  /// Measure in the computational basis and replace with a uniformly random
  /// basis state: K_ij = |i><j| / sqrt(d). Maps every state to 1/d.
  static KrausSet depolarizing(Index dim) {
    std::vector<CMatrix<Real>> ops;
    const Real scale = Real(1) / std::sqrt(Real(dim));
    for (Index i = 0; i < dim; ++i) {
      for (Index j = 0; j < dim; ++j) {
        CMatrix<Real> k = CMatrix<Real>::Zero(dim, dim);
        k(i, j) = scale;
        ops.push_back(std::move(k));
      }
    }
    return KrausSet(std::move(ops));
  }

  Index input_dim() const { return ops_.front().cols(); }
  Index output_dim() const { return ops_.front().rows(); }
  std::size_t rank() const { return ops_.size(); }
  const std::vector<CMatrix<Real>>& operators() const { return ops_; }

 private:
  std::vector<CMatrix<Real>> ops_;
};

template <class Real>
DensityMatrix<Real> apply_channel(const DensityMatrix<Real>& rho, const KrausSet<Real>& channel) {
  if (rho.dim() != channel.input_dim()) {
    throw DimensionError("apply_channel: state dim " + std::to_string(rho.dim()) +
                         " != channel input dim " + std::to_string(channel.input_dim()));
  }
  CMatrix<Real> out = CMatrix<Real>::Zero(channel.output_dim(), channel.output_dim());
  for (const auto& k : channel.operators()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix<Real>::assume_valid(Hermitian<Real>::symmetrized(out));
}

namespace pauli {
template <class Real = double>
Hermitian<Real> x() {
  CMatrix<Real> m(2, 2);
  m << 0, 1, 1, 0;
  return Hermitian<Real>(m);
}
template <class Real = double>
Hermitian<Real> y() {
  using C = std::complex<Real>;
  CMatrix<Real> m(2, 2);
  m << C(0), C(0, -1), C(0, 1), C(0);
  return Hermitian<Real>(m);
}
template <class Real = double>
Hermitian<Real> z() {
  CMatrix<Real> m(2, 2);
  m << 1, 0, 0, -1;
  return Hermitian<Real>(m);
}
}  // namespace pauli

using Hermitiand = Hermitian<double>;
using HermitianOperator = Hermitiand;
using DensityMatrixd = DensityMatrix<double>;
using TestOperatord = TestOperator<double>;
using KrausSetd = KrausSet<double>;
using EigenDecompositiond = EigenDecomposition<double>;

}  // namespace macrolab
