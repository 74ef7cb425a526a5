#pragma once

// Coarse grainings and the tangent-space projector.
//
// The projector at expectation values f acts on N-copy observables. Its
// adjoint on states is the tangent-space map
//
//   P^dagger tau = mu_f^{xN} + sum_a D_a^(N) (gbar_a(tau) - f_a),
//
// with D_a = d mu / d f_a, D_a^(N) = sum_k mu x .. x D_a (slot k) x .. x mu and
// gbar_a(tau) = tr(Gbar_a^(N) tau) for the copy-averaged observable
// Gbar_a^(N) = (1/N) sum_k 1 x .. x G_a (slot k) x .. x 1. Every state with
// copy-averaged expectations f is mapped to mu_f^{xN}.

#include <cstdint>
#include <ostream>
#include <vector>

#include "macrolab/maxent.hpp"

namespace macrolab {

/// rho -> mu_{f(rho)} with f_b(rho) = tr(F_b rho).
CanonicalState canonical_coarse_grain(const DensityMatrixd& rho, const ObservableSet& obs,
                                      const FitOptions& options = {});

/// rho_AB -> rho_A x rho_B.
DensityMatrixd product_coarse_grain(const DensityMatrixd& rho_ab, Index dim_a, Index dim_b);

struct KGProjector {
  ObservableSet observables;
  Eigen::VectorXd f;
  DensityMatrixd mu;
  std::vector<HermitianOperator> derivs;
};

KGProjector kg_build(const ObservableSet& obs, const Eigen::VectorXd& f,
                     const FitOptions& options = {});
KGProjector kg_build(const CanonicalState& state);

/// N-copy operators of a projector; build once when applying it repeatedly.
struct KGLift {
  int copies;
  HermitianOperator mu;                      // mu^{xN}
  std::vector<HermitianOperator> derivs;     // D_a^(N)
  std::vector<HermitianOperator> averaged;   // Gbar_a^(N)
};

KGLift kg_lift(const KGProjector& kg, int copies, long long cap = default_dim_cap);

/// Adjoint action on a trace-one Hermitian tau of dim d^N. The result has
/// trace one but need not be positive.
HermitianOperator kg_apply_state(const KGProjector& kg, const KGLift& lift,
                                 const HermitianOperator& tau);
HermitianOperator kg_apply_state(const KGProjector& kg, const HermitianOperator& tau, int copies);

/// P Gamma = tr(mu^{xN} Gamma) 1 + sum_a (Gbar_a^(N) - f_a) tr(D_a^(N) Gamma).
HermitianOperator kg_apply_observable(const KGProjector& kg, const KGLift& lift,
                                      const HermitianOperator& gamma);
HermitianOperator kg_apply_observable(const KGProjector& kg, const HermitianOperator& gamma,
                                      int copies);

/// Q Gamma = Gamma - P Gamma.
HermitianOperator kg_complement_observable(const KGProjector& kg, const KGLift& lift,
                                           const HermitianOperator& gamma);

struct PositivityReport {
  int copies;
  int trials;
  double min_eig;
  double max_eig;
  int violations;
  double violation_fraction;  // draws with eigenvalues of P Gamma outside [-1e-9, 1 + 1e-9]
};

inline constexpr double positivity_slack = 1e-9;

/// Applies P to seeded random test operators (stream (seed, k) for draw k) and
/// records the spectral range of the images. Measures only.
PositivityReport positivity_diagnostic(const KGProjector& kg, int copies, int trials,
                                       std::uint64_t seed, long long cap = default_dim_cap);

/// sup over 0 <= Gamma <= 1 of |(rho^{xN} | Q Gamma)|, evaluated exactly as
/// max(tr Delta_+, tr Delta_-) with Delta = rho^{xN} - P^dagger rho^{xN}.
double gamma_n(const KGProjector& kg, const DensityMatrixd& rho, int copies,
               long long cap = default_dim_cap);

/// The test operator attaining gamma_n: projector onto the positive part of
/// Delta when tr Delta_+ >= tr Delta_-, else onto the negative part.
TestOperatord gamma_n_optimizer(const KGProjector& kg, const DensityMatrixd& rho, int copies,
                                long long cap = default_dim_cap);

struct EpsilonChoice {
  double epsilon;        // (1 - gamma) / 2
  double epsilon_prime;  // (1 + gamma) / 2
};

/// Requires 0 <= gamma < 1.
EpsilonChoice epsilon_choices(double gamma);

struct KGReportRow {
  int copies;
  double gamma_n;
  double min_eig_p_gamma;
  double violation_fraction;
  double gamma_above_one_fraction = 0.0;  // draws with gamma_N > 1 + 1e-9
};

/// Columns: N,gamma_N,min_eig_PGamma,violation_fraction,gamma_above_one_fraction.
void write_csv(std::ostream& os, const std::vector<KGReportRow>& rows);

}  // namespace macrolab
