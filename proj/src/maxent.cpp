#include "macrolab/maxent.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace macrolab {

namespace {

Index dim_of(const std::vector<HermitianOperator>& members) {
  if (members.empty()) {
    throw DimensionError("ObservableSet: dimension cannot be inferred from an empty member list");
  }
  return members.front().dim();
}

// Covariance of the operators `ops` at the canonical state: tr(X_a K_b) - <X_a><X_b>,
// where K_b is the Frechet derivative of exp(A - logZ) in direction X_b.
Eigen::MatrixXd kubo_covariance(const CanonicalState& cs, const std::vector<HermitianOperator>& ops,
                                std::vector<HermitianOperator>* directions = nullptr) {
  const Index m = static_cast<Index>(ops.size());
  std::vector<HermitianOperator> k;
  k.reserve(ops.size());
  Eigen::VectorXd mean(m);
  for (Index b = 0; b < m; ++b) {
    const auto& op = ops[static_cast<std::size_t>(b)];
    k.push_back(HermitianOperator::symmetrized(frechet_exp(cs.generator, op.matrix(), cs.log_z)));
    mean(b) = trace_product(op, cs.mu.op());
  }
  Eigen::MatrixXd c(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      c(a, b) = trace_product(ops[static_cast<std::size_t>(a)], k[static_cast<std::size_t>(b)]) -
                mean(a) * mean(b);
    }
  }
  if (directions != nullptr) *directions = std::move(k);
  return 0.5 * (c + c.transpose());
}

}  // namespace

ObservableSet::ObservableSet(std::vector<HermitianOperator> members)
    : ObservableSet(dim_of(members), std::move(members)) {}

ObservableSet::ObservableSet(Index dim, std::vector<HermitianOperator> members)
    : dim_(dim), members_(std::move(members)) {
  if (dim_ < 1) throw DimensionError("ObservableSet: dim must be >= 1");
  const Index m = size();
  for (const auto& g : members_) {
    if (g.dim() != dim_) {
      throw DimensionError("ObservableSet: member of dim " + std::to_string(g.dim()) +
                           " in a set of dim " + std::to_string(dim_));
    }
  }

  // Gram matrix of {1, G_1, ..., G_m} under tr(XY).
  const auto id = HermitianOperator::identity(dim_);
  Eigen::MatrixXd gram(m + 1, m + 1);
  auto element = [&](Index i) -> const HermitianOperator& {
    return i == 0 ? id : members_[static_cast<std::size_t>(i - 1)];
  };
  for (Index i = 0; i <= m; ++i) {
    for (Index j = i; j <= m; ++j) gram(i, j) = gram(j, i) = trace_product(element(i), element(j));
  }
  const Eigen::VectorXd w = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues();
  gram_condition_ = w(0) > 0.0 ? w(m) / w(0) : std::numeric_limits<double>::infinity();
  if (!(gram_condition_ < max_gram_condition)) {
    throw ConditioningError("ObservableSet: members and identity are (nearly) linearly dependent, "
                            "Gram condition number " + detail::format_double(gram_condition_),
                            gram_condition_);
  }

  offsets_.resize(m);
  std::vector<HermitianOperator> centered;
  centered.reserve(members_.size());
  for (Index a = 0; a < m; ++a) {
    offsets_(a) = (*this)[a].trace() / static_cast<double>(dim_);
    centered.push_back((*this)[a] - offsets_(a) * id);
  }
  for (Index a = 0; a < m; ++a) {
    HermitianOperator v = centered[static_cast<std::size_t>(a)];
    for (const auto& b : basis_) v -= trace_product(b, v) * b;
    basis_.push_back(v / std::sqrt(trace_product(v, v)));
  }
  mixing_ = Eigen::MatrixXd::Zero(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index i = 0; i <= a; ++i) {
      mixing_(a, i) = trace_product(basis_[static_cast<std::size_t>(i)],
                                    centered[static_cast<std::size_t>(a)]);
    }
  }
}

Eigen::VectorXd ObservableSet::expectations(const HermitianOperator& x) const {
  Eigen::VectorXd out(size());
  for (Index a = 0; a < size(); ++a) out(a) = trace_product((*this)[a], x);
  return out;
}

HermitianOperator ObservableSet::combination(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != size()) {
    throw DimensionError("coefficient vector of length " + std::to_string(coeffs.size()) +
                         " for " + std::to_string(size()) + " observables");
  }
  auto out = HermitianOperator::zero(dim_);
  for (Index a = 0; a < size(); ++a) out += coeffs(a) * (*this)[a];
  return out;
}

CanonicalState canonical_from_lambda(const ObservableSet& obs, const Eigen::VectorXd& lambda) {
  const auto generator = obs.combination(lambda);
  auto decomposition = eig(generator);
  const Eigen::VectorXd& w = decomposition.values;
  const double top = w.maxCoeff();
  const double log_z = top + std::log((w.array() - top).exp().sum());
  auto mu = DensityMatrixd::assume_valid(HermitianOperator::symmetrized(
      decomposition.map([log_z](double x) { return std::exp(x - log_z); })));
  Eigen::VectorXd f = obs.expectations(mu.op());
  const bool extremal = std::exp(w.minCoeff() - log_z) < CanonicalState::near_extremal_eigenvalue;
  return CanonicalState{obs,   lambda, std::move(f), std::move(mu), log_z, 0.0, extremal,
                        std::move(decomposition)};
}

Eigen::MatrixXd covariance(const CanonicalState& cs) {
  return kubo_covariance(cs, cs.observables.members());
}

CanonicalState fit_maxent(const ObservableSet& obs, const Eigen::VectorXd& f_target,
                          const FitOptions& options) {
  if (f_target.size() != obs.size()) {
    throw DimensionError("fit_maxent: " + std::to_string(f_target.size()) + " targets for " +
                         std::to_string(obs.size()) + " observables");
  }
  if (!f_target.allFinite()) throw DomainError("fit_maxent: non-finite target");

  const Eigen::MatrixXd& mix = obs.mixing();
  const Index m = obs.size();
  auto dual = [&](const CanonicalState& s) { return s.log_z - s.lambda.dot(f_target); };
  auto residual = [&](const CanonicalState& s) {
    return m == 0 ? 0.0 : (s.f - f_target).cwiseAbs().maxCoeff();
  };

  CanonicalState state = canonical_from_lambda(obs, Eigen::VectorXd::Zero(m));
  double res = residual(state);
  double value = dual(state);
  for (int iter = 0; res > options.tol; ++iter) {
    if (iter >= options.max_iter) {
      throw InfeasibleError("fit_maxent: no convergence after " + std::to_string(iter) +
                                " iterations (residual " + detail::format_double(res) + ")",
                            res < 1e-6);
    }
    // Newton system in orthonormal coordinates: C' = L^-1 C L^-T.
    const Eigen::MatrixXd c_ortho = kubo_covariance(state, obs.orthonormal_basis()) +
                                    1e-12 * Eigen::MatrixXd::Identity(m, m);
    const auto lower = mix.triangularView<Eigen::Lower>();
    const Eigen::VectorXd rhs = lower.solve(f_target - state.f);
    const Eigen::VectorXd step_ortho = c_ortho.ldlt().solve(rhs);
    const Eigen::VectorXd step = lower.transpose().solve(step_ortho);

    bool accepted = false;
    for (double alpha = 1.0; alpha > 0x1.0p-60; alpha *= 0.5) {
      CanonicalState trial = canonical_from_lambda(obs, state.lambda + alpha * step);
      const double trial_value = dual(trial);
      const double trial_res = residual(trial);
      // Near the optimum the dual is flat to rounding; accept residual progress there.
      const double slack = 1e-15 * (1.0 + std::abs(value));
      if (trial_value < value || (trial_value <= value + slack && trial_res < res)) {
        state = std::move(trial);
        value = trial_value;
        res = trial_res;
        accepted = true;
        break;
      }
    }
    const double lambda_norm = (mix.transpose() * state.lambda).cwiseAbs().maxCoeff();
    if (lambda_norm > options.divergence) {
      throw InfeasibleError("fit_maxent: Lagrange parameters diverged (|lambda| = " +
                                detail::format_double(lambda_norm) + ", residual " +
                                detail::format_double(res) + "); target infeasible",
                            res < 1e-6);
    }
    if (!accepted && res > options.tol) {
      throw InfeasibleError("fit_maxent: line search stalled at residual " +
                                detail::format_double(res),
                            res < 1e-6);
    }
  }
  state.fit_residual = res;
  return state;
}

std::vector<HermitianOperator> state_derivatives(const CanonicalState& cs) {
  const Index m = cs.observables.size();
  std::vector<HermitianOperator> directions;
  const Eigen::MatrixXd c = kubo_covariance(cs, cs.observables.members(), &directions);
  std::vector<HermitianOperator> out;
  if (m == 0) return out;

  const Eigen::VectorXd w = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(c).eigenvalues();
  const double cond = w(0) > 0.0 ? w(m - 1) / w(0) : std::numeric_limits<double>::infinity();
  if (!(cond <= max_covariance_condition)) {
    throw ConditioningError("state_derivatives: covariance condition number " +
                                detail::format_double(cond) + " exceeds " +
                                detail::format_double(max_covariance_condition),
                            cond);
  }
  const Eigen::MatrixXd c_inv = c.ldlt().solve(Eigen::MatrixXd::Identity(m, m));

  // d mu / d lambda^b = K_b - mu f_b.
  std::vector<HermitianOperator> dmu;
  dmu.reserve(static_cast<std::size_t>(m));
  for (Index b = 0; b < m; ++b) {
    dmu.push_back(directions[static_cast<std::size_t>(b)] - cs.f(b) * cs.mu.op());
  }
  out.reserve(static_cast<std::size_t>(m));
  for (Index a = 0; a < m; ++a) {
    auto d = HermitianOperator::zero(cs.observables.dim());
    for (Index b = 0; b < m; ++b) d += c_inv(a, b) * dmu[static_cast<std::size_t>(b)];
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace macrolab
