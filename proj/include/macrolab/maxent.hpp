#pragma once

// Generalized canonical states mu ~ exp(sum_a lambda^a G_a).

#include <vector>

#include "macrolab/operator.hpp"

namespace macrolab {

/// Relevant observables {G_a} defining a level of description.
///
/// Members are kept exactly as given (lambda and f refer to them). Alongside,
/// the set carries a trace-orthonormal basis B_i of the span of the centered
/// members, with G_a = c_a * 1 + sum_i L_ai B_i and L lower triangular; the
/// Newton solve runs in those coordinates.
class ObservableSet {
 public:
  /// Rejects mismatched dims and sets whose Gram matrix with the identity has
  /// condition number >= max_gram_condition.
  ObservableSet(Index dim, std::vector<HermitianOperator> members);
  explicit ObservableSet(std::vector<HermitianOperator> members);

  static constexpr double max_gram_condition = 1e8;

  Index dim() const { return dim_; }
  Index size() const { return static_cast<Index>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<HermitianOperator>& members() const { return members_; }
  const HermitianOperator& operator[](Index a) const { return members_[static_cast<std::size_t>(a)]; }

  /// tr(G_a x) for every member.
  Eigen::VectorXd expectations(const HermitianOperator& x) const;
  /// sum_a coeffs_a G_a (zero operator for an empty set).
  HermitianOperator combination(const Eigen::VectorXd& coeffs) const;

  const std::vector<HermitianOperator>& orthonormal_basis() const { return basis_; }
  const Eigen::MatrixXd& mixing() const { return mixing_; }
  const Eigen::VectorXd& offsets() const { return offsets_; }
  double gram_condition() const { return gram_condition_; }

 private:
  Index dim_;
  std::vector<HermitianOperator> members_;
  std::vector<HermitianOperator> basis_;
  Eigen::MatrixXd mixing_;
  Eigen::VectorXd offsets_;
  double gram_condition_ = 1.0;
};

struct CanonicalState {
  ObservableSet observables;
  Eigen::VectorXd lambda;
  Eigen::VectorXd f;
  DensityMatrixd mu;
  double log_z;
  /// |f - target|_inf at construction; 0 when built from lambda.
  double fit_residual = 0.0;
  /// Smallest eigenvalue of mu fell below near_extremal_eigenvalue: the
  /// expectation values sit numerically on the boundary of the feasible set.
  bool near_extremal = false;
  /// Spectral decomposition of the generator sum_a lambda^a G_a.
  EigenDecompositiond generator;

  static constexpr double near_extremal_eigenvalue = 1e-9;
};

struct FitOptions {
  double tol = 1e-10;
  int max_iter = 200;
  /// |lambda| (orthonormal coordinates, max norm) beyond which the target is
  /// declared infeasible.
  double divergence = 1e3;
};

/// mu = exp(A - logZ), A = sum lambda^a G_a, logZ evaluated with a
/// max-eigenvalue shift.
CanonicalState canonical_from_lambda(const ObservableSet& obs, const Eigen::VectorXd& lambda);

/// Kubo covariance C_ab = d f_a / d lambda^b, symmetrized.
Eigen::MatrixXd covariance(const CanonicalState& cs);

/// Damped Newton on the dual logZ(lambda) - lambda . f_target from lambda = 0.
/// Throws InfeasibleError when lambda diverges or the iteration cap is hit.
CanonicalState fit_maxent(const ObservableSet& obs, const Eigen::VectorXd& f_target,
                          const FitOptions& options = {});

/// D_a = d mu / d f_a (traceless, tr(G_c D_a) = delta_ca).
/// Throws ConditioningError when cond(C) > max_covariance_condition.
std::vector<HermitianOperator> state_derivatives(const CanonicalState& cs);

inline constexpr double max_covariance_condition = 1e10;

}  // namespace macrolab
