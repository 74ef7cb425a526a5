#pragma once

// Experiment orchestration: seeded inequality sweeps, Stein-rate studies and
// the projector check battery, with CSV and summary emission.
//
// Every trial draws from its own stream RandomStream(seed, trial), so results
// do not depend on evaluation order. Infeasible MaxEnt draws are redrawn from
// the same stream and counted.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "macrolab/entropy.hpp"
#include "macrolab/hypotest.hpp"
#include "macrolab/kg.hpp"

namespace macrolab {

enum class Experiment { process, monotonicity, product, lindblad, stein, kg_checks };

std::optional<Experiment> parse_experiment(std::string_view name);
std::string_view to_string(Experiment experiment);

struct ExperimentConfig {
  Experiment experiment = Experiment::process;
  /// Unset: the experiment's default (process 4; monotonicity and lindblad
  /// cycle through 2, 3, 4).
  std::optional<Index> dim;
  Index dim_a = 2;
  Index dim_b = 2;
  /// Observable count (process, monotonicity) or Kraus rank (lindblad).
  /// Unset: process 2; monotonicity cycles 1..3; lindblad cycles 1..4.
  std::optional<Index> m;
  /// Unset: 1000 for sweeps, 200 sampled tests per N for stein, 20 draws per
  /// grid cell for kg-checks.
  std::optional<int> trials;
  std::uint64_t seed = 42;
  /// Copies: up to this N for stein (default 10) and kg-checks (default 3).
  std::optional<int> n_max;
  double epsilon = 0.5;
  double tolerance = 1e-9;
  std::string out;
  /// Stein inputs. Unset: diag(0.9, 0.1) vs diag(0.5, 0.5), or a seeded
  /// random full-rank pair when `dim` is given.
  std::optional<DensityMatrixd> rho;
  std::optional<DensityMatrixd> sigma;

  int trials_or_default() const;
  int n_max_or_default() const;
  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Reads the keys experiment, dim, dims, m, trials, seed, n_max, epsilon,
/// tolerance, out, rho, sigma; missing keys keep the values in `base`.
ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base = {});

struct TrialRecord {
  int trial;
  Index dim;
  Index m;
  ExtendedReal s_before;
  ExtendedReal s_after;
  ExtendedReal slack;  // s_before - s_after
  bool pass;           // slack >= -tolerance
};

TrialRecord make_record(int trial, Index dim, Index m, ExtendedReal before, ExtendedReal after,
                        double tolerance);

struct SweepResult {
  std::string name;
  std::vector<TrialRecord> records;
  int redraws = 0;

  double pass_fraction() const;
  ExtendedReal min_slack() const;
  bool all_pass() const;
  double redraw_rate() const;
};

inline constexpr double max_redraw_rate = 0.05;

/// Extended second law and, as the second sweep, its specialization against
/// the uniform state. Both share the draws of each trial.
std::vector<SweepResult> run_process(const ExperimentConfig& config);
SweepResult run_monotonicity(const ExperimentConfig& config);
/// Product coarse graining and, as the second sweep, the partial-trace bound.
std::vector<SweepResult> run_product(const ExperimentConfig& config);
SweepResult run_lindblad(const ExperimentConfig& config);

struct SteinStudy {
  SteinSeries series;
  /// Largest N whose dimension admits gap sampling.
  int sampled_up_to;
  bool all_pass(double tolerance) const;
};

/// Sampling (and thus the gap column) is skipped for N with dim^N above this.
inline constexpr Index stein_sampling_dim_cap = 64;

SteinStudy run_stein(const ExperimentConfig& config);

struct CheckResult {
  std::string name;
  double worst;      // largest observed violation measure
  double threshold;  // pass iff worst < threshold (or >= for fractions, see `at_least`)
  bool at_least = false;
  int samples = 0;
  bool pass() const { return samples > 0 && (at_least ? worst >= threshold : worst < threshold); }
};

struct KGBattery {
  std::vector<CheckResult> checks;
  std::vector<KGReportRow> rows;
  /// Draws skipped because the fitted covariance was too ill-conditioned.
  int skipped = 0;
  /// Draws whose gamma (max over N) reached 1, leaving eps undefined; the
  /// pairing-constraint check does not apply to them.
  int constraint_inapplicable = 0;
  bool all_pass() const;
};

/// Grid: N in 1..n_max, dims 2 and 3, m in {1, 2}; `trials` draws per cell.
KGBattery run_kg_checks(const ExperimentConfig& config);

struct NonlinearityWitness {
  int draws;
  double canonical_fraction;  // draws with trace distance > 1e-6
  double product_fraction;
};

/// Compares coarse graining of an even mixture with the mixture of coarse
/// grainings for canonical replacement and for product coarse graining.
NonlinearityWitness nonlinearity_witness(int draws, std::uint64_t seed);

/// Columns: trial,dim,m,S_before,S_after,slack,pass.
void write_csv(std::ostream& os, const SweepResult& sweep);

struct RunOutcome {
  bool ok;
  std::vector<std::string> summary;  // human-readable lines
};

/// Runs the configured experiment, writing the primary CSV to `csv` and any
/// companion sweep to `<out stem>.<name>.csv` when config.out is set.
RunOutcome run_experiment(const ExperimentConfig& config, std::ostream& csv);

}  // namespace macrolab
