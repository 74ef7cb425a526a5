#pragma once

// Optimal binary hypothesis tests:
//   prob_eps(rho | sigma) = inf { tr(sigma Gamma) : tr(rho Gamma) >= eps, 0 <= Gamma <= 1 }
// and the finite-N Stein rates -ln(prob_eps(rho^N | sigma^N)) / N.

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "macrolab/entropy.hpp"
#include "macrolab/operator.hpp"

namespace macrolab {

struct NPTestResult {
  double epsilon;
  double threshold_t;
  double prob;   // tr(sigma Gamma), minimized
  double power;  // tr(rho Gamma) >= epsilon
  TestOperatord gamma_op;
};

/// Eigenvalues of rho - t sigma with |w| <= this are treated as the zero band.
inline constexpr double np_kernel_band = 1e-10;
/// prob at or below this is reported as perfect distinguishability.
inline constexpr double perfect_distinguishability_prob = 1e-14;

/// Quantum Neyman-Pearson test: bisection on t for g(t) = tr(rho Pi_+(rho - t sigma)),
/// then Gamma = Pi_+ + c Pi_0 with c fixing tr(rho Gamma) = eps.
NPTestResult np_optimal_test(const DensityMatrixd& rho, const DensityMatrixd& sigma, double epsilon);

/// prob_eps(rho^N | sigma^N).
double prob_eps_tensor(const DensityMatrixd& rho, const DensityMatrixd& sigma, double epsilon,
                       int copies, long long cap = default_dim_cap);

/// Smallest tr(sigma^N Gamma) over sampled feasible tests: random test operators
/// and spectrally clipped perturbations of the NP minimizer, each mixed with the
/// identity just enough to satisfy tr(rho^N Gamma) >= eps. Always an upper
/// bound on prob_eps; stream (seed, k) drives sample k.
double sampled_gamma_bound(const DensityMatrixd& rho, const DensityMatrixd& sigma, double epsilon,
                           int copies, int trials, std::uint64_t seed,
                           long long cap = default_dim_cap);

struct SteinPoint {
  int copies;
  double prob;
  ExtendedReal rate;
  std::optional<double> gap;  // sampled bound - prob, when sampling was requested
};

struct SteinSeries {
  double epsilon;
  ExtendedReal relative_entropy;
  std::vector<SteinPoint> points;
};

struct SteinOptions {
  int gap_trials = 0;
  std::uint64_t seed = 0;
  long long cap = default_dim_cap;
  /// Gap sampling is skipped (gap left empty) for N with dim^N above this.
  long long gap_dim_cap = default_dim_cap;
};

SteinSeries stein_rate_series(const DensityMatrixd& rho, const DensityMatrixd& sigma,
                              double epsilon, int n_max, const SteinOptions& options = {});

/// Columns: N,prob,rate,relative_entropy,gap (gap empty when not sampled).
void write_csv(std::ostream& os, const SteinSeries& series);

}  // namespace macrolab
