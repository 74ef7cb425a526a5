#include "macrolab/kg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "macrolab/entropy.hpp"
#include "macrolab/random.hpp"

namespace macrolab {

CanonicalState canonical_coarse_grain(const DensityMatrixd& rho, const ObservableSet& obs,
                                      const FitOptions& options) {
  if (rho.dim() != obs.dim()) {
    throw DimensionError("canonical_coarse_grain: state dim " + std::to_string(rho.dim()) +
                         " vs observables dim " + std::to_string(obs.dim()));
  }
  return fit_maxent(obs, obs.expectations(rho.op()), options);
}

DensityMatrixd product_coarse_grain(const DensityMatrixd& rho_ab, Index dim_a, Index dim_b) {
  return tensor(partial_trace(rho_ab, dim_a, dim_b, Subsystem::A),
                partial_trace(rho_ab, dim_a, dim_b, Subsystem::B));
}

KGProjector kg_build(const CanonicalState& state) {
  return KGProjector{state.observables, state.f, state.mu, state_derivatives(state)};
}

KGProjector kg_build(const ObservableSet& obs, const Eigen::VectorXd& f, const FitOptions& options) {
  return kg_build(fit_maxent(obs, f, options));
}

KGLift kg_lift(const KGProjector& kg, int copies, long long cap) {
  const Index d = kg.mu.dim();
  checked_power_dim(d, copies, cap);
  const auto id = HermitianOperator::identity(d);
  KGLift lift{copies, tensor_power(kg.mu.op(), copies, cap), {}, {}};
  for (std::size_t a = 0; a < kg.derivs.size(); ++a) {
    lift.derivs.push_back(slot_sum(kg.derivs[a], kg.mu.op(), copies, cap));
    lift.averaged.push_back(slot_sum(kg.observables.members()[a], id, copies, cap) /
                            static_cast<double>(copies));
  }
  return lift;
}

namespace {

void require_lift_dim(const KGLift& lift, const HermitianOperator& x, const char* what) {
  if (x.dim() != lift.mu.dim()) {
    throw DimensionError(std::string(what) + ": operator dim " + std::to_string(x.dim()) +
                         " != lifted dim " + std::to_string(lift.mu.dim()));
  }
}

}  // namespace

HermitianOperator kg_apply_state(const KGProjector& kg, const KGLift& lift,
                                 const HermitianOperator& tau) {
  require_lift_dim(lift, tau, "kg_apply_state");
  if (!(std::abs(tau.trace() - 1.0) <= tolerance::trace)) {
    throw InvalidStateError("kg_apply_state: input trace " + detail::format_double(tau.trace()) +
                            ", expected 1");
  }
  HermitianOperator out = lift.mu;
  for (std::size_t a = 0; a < lift.derivs.size(); ++a) {
    const double shift = trace_product(lift.averaged[a], tau) - kg.f(static_cast<Index>(a));
    out += shift * lift.derivs[a];
  }
  return out;
}

HermitianOperator kg_apply_state(const KGProjector& kg, const HermitianOperator& tau, int copies) {
  return kg_apply_state(kg, kg_lift(kg, copies), tau);
}

HermitianOperator kg_apply_observable(const KGProjector& kg, const KGLift& lift,
                                      const HermitianOperator& gamma) {
  require_lift_dim(lift, gamma, "kg_apply_observable");
  const auto id = HermitianOperator::identity(gamma.dim());
  HermitianOperator out = trace_product(lift.mu, gamma) * id;
  for (std::size_t a = 0; a < lift.derivs.size(); ++a) {
    const double weight = trace_product(lift.derivs[a], gamma);
    out += weight * (lift.averaged[a] - kg.f(static_cast<Index>(a)) * id);
  }
  return out;
}

HermitianOperator kg_apply_observable(const KGProjector& kg, const HermitianOperator& gamma,
                                      int copies) {
  return kg_apply_observable(kg, kg_lift(kg, copies), gamma);
}

HermitianOperator kg_complement_observable(const KGProjector& kg, const KGLift& lift,
                                           const HermitianOperator& gamma) {
  return gamma - kg_apply_observable(kg, lift, gamma);
}

PositivityReport positivity_diagnostic(const KGProjector& kg, int copies, int trials,
                                       std::uint64_t seed, long long cap) {
  const KGLift lift = kg_lift(kg, copies, cap);
  const Index d = lift.mu.dim();
  PositivityReport report{copies, trials, std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity(), 0, 0.0};
  for (int k = 0; k < trials; ++k) {
    RandomStream rng(seed, static_cast<std::uint64_t>(k));
    const auto gamma = random_test_operator(rng, d);
    const Eigen::VectorXd w = eigenvalues(kg_apply_observable(kg, lift, gamma.op()));
    report.min_eig = std::min(report.min_eig, w.minCoeff());
    report.max_eig = std::max(report.max_eig, w.maxCoeff());
    if (w.minCoeff() < -positivity_slack || w.maxCoeff() > 1.0 + positivity_slack) {
      ++report.violations;
    }
  }
  report.violation_fraction = trials > 0 ? static_cast<double>(report.violations) / trials : 0.0;
  return report;
}

namespace {

HermitianOperator complement_residual(const KGProjector& kg, const DensityMatrixd& rho, int copies,
                                      long long cap) {
  if (rho.dim() != kg.mu.dim()) {
    throw DimensionError("gamma_n: state dim " + std::to_string(rho.dim()) +
                         " vs projector dim " + std::to_string(kg.mu.dim()));
  }
  const KGLift lift = kg_lift(kg, copies, cap);
  const auto rho_n = tensor_power(rho.op(), copies, cap);
  return rho_n - kg_apply_state(kg, lift, rho_n);
}

}  // namespace

double gamma_n(const KGProjector& kg, const DensityMatrixd& rho, int copies, long long cap) {
  const auto parts = pos_neg_parts(complement_residual(kg, rho, copies, cap));
  return std::max(parts.positive.trace(), parts.negative.trace());
}

TestOperatord gamma_n_optimizer(const KGProjector& kg, const DensityMatrixd& rho, int copies,
                                long long cap) {
  const auto delta = complement_residual(kg, rho, copies, cap);
  const auto d = eig(delta);
  double pos = 0.0;
  double neg = 0.0;
  for (double w : d.values) (w > 0.0 ? pos : neg) += std::abs(w);
  const bool take_positive = pos >= neg;
  return TestOperatord::assume_valid(HermitianOperator::symmetrized(d.projector(
      [take_positive](double w) { return take_positive ? w > 0.0 : w < 0.0; })));
}

EpsilonChoice epsilon_choices(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw DomainError("epsilon_choices: gamma must lie in [0, 1), got " +
                      detail::format_double(gamma) + " (extremal expectation values)");
  }
  return EpsilonChoice{(1.0 - gamma) / 2.0, (1.0 + gamma) / 2.0};
}

void write_csv(std::ostream& os, const std::vector<KGReportRow>& rows) {
  os << "N,gamma_N,min_eig_PGamma,violation_fraction,gamma_above_one_fraction\n";
  for (const auto& r : rows) {
    os << r.copies << ',' << ExtendedReal(r.gamma_n).to_string() << ','
       << ExtendedReal(r.min_eig_p_gamma).to_string() << ','
       << ExtendedReal(r.violation_fraction).to_string() << ','
       << ExtendedReal(r.gamma_above_one_fraction).to_string() << '\n';
  }
}

}  // namespace macrolab
