#include "macrolab/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "macrolab/random.hpp"
#include "macrolab/serialize.hpp"

namespace macrolab {

namespace {

constexpr int kMaxRedrawsPerTrial = 100;

constexpr std::array<std::pair<Experiment, std::string_view>, 6> kExperimentNames{{
    {Experiment::process, "process"},
    {Experiment::monotonicity, "monotonicity"},
    {Experiment::product, "product"},
    {Experiment::lindblad, "lindblad"},
    {Experiment::stein, "stein"},
    {Experiment::kg_checks, "kg-checks"},
}};

std::string fmt(double x) { return ExtendedReal(x).to_string(); }

// Runs `draw` on the trial's stream, redrawing (from the same stream) when the
// MaxEnt fit reports an infeasible or ill-conditioned target.
template <class Draw>
auto draw_with_redraws(RandomStream& rng, int& redraws, Draw&& draw) {
  for (int attempt = 0;; ++attempt) {
    try {
      return draw(rng);
    } catch (const InfeasibleError&) {
    } catch (const ConditioningError&) {
    }
    ++redraws;
    if (attempt + 1 >= kMaxRedrawsPerTrial) {
      throw std::runtime_error("more than " + std::to_string(kMaxRedrawsPerTrial) +
                               " consecutive infeasible draws in one trial");
    }
  }
}

Index cycled(const std::optional<Index>& fixed, int trial, int period, Index first, int stride = 1) {
  if (fixed) return *fixed;
  return first + (trial / stride) % period;
}

}  // namespace

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (const auto& [e, n] : kExperimentNames) {
    if (n == name) return e;
  }
  return std::nullopt;
}

std::string_view to_string(Experiment experiment) {
  for (const auto& [e, n] : kExperimentNames) {
    if (e == experiment) return n;
  }
  return "unknown";
}

int ExperimentConfig::trials_or_default() const {
  if (trials) return *trials;
  switch (experiment) {
    case Experiment::stein:
      return 200;
    case Experiment::kg_checks:
      return 20;
    default:
      return 1000;
  }
}

int ExperimentConfig::n_max_or_default() const {
  if (n_max) return *n_max;
  return experiment == Experiment::kg_checks ? 3 : 10;
}

void ExperimentConfig::validate() const {
  if (trials_or_default() < 1) throw std::invalid_argument("trials must be >= 1");
  if (dim && (*dim < 1 || *dim > default_dim_cap)) {
    throw std::invalid_argument("dim must lie in [1, " + std::to_string(default_dim_cap) + "]");
  }
  if (dim_a < 1 || dim_b < 1 || dim_a * dim_b > default_dim_cap) {
    throw std::invalid_argument("dims must be >= 1 with product within the cap");
  }
  if (m && *m < 0) throw std::invalid_argument("m must be >= 0");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (n_max_or_default() < 1) throw std::invalid_argument("n_max must be >= 1");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  if (experiment == Experiment::process || experiment == Experiment::monotonicity) {
    const Index d = dim.value_or(experiment == Experiment::process ? 4 : 2);
    if (m && *m > d * d - 1) {
      throw std::invalid_argument("m = " + std::to_string(*m) + " exceeds dim^2 - 1 = " +
                                  std::to_string(d * d - 1));
    }
  }
  if (experiment == Experiment::lindblad && m && *m < 1) {
    throw std::invalid_argument("Kraus rank m must be >= 1");
  }
  if (experiment == Experiment::kg_checks && n_max_or_default() > 3) {
    // dims up to 3 with N copies; 3^N beyond 27 makes the battery slow, not wrong.
    checked_power_dim(3, n_max_or_default());
  }
  if (rho.has_value() != sigma.has_value()) {
    throw std::invalid_argument("rho and sigma must be given together");
  }
  if (rho && rho->dim() != sigma->dim()) throw std::invalid_argument("rho and sigma dims differ");
}

ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base) {
  if (doc.contains("experiment")) {
    const auto name = doc.at("experiment").get<std::string>();
    const auto e = parse_experiment(name);
    if (!e) throw std::invalid_argument("unknown experiment '" + name + "'");
    base.experiment = *e;
  }
  if (doc.contains("dim")) base.dim = doc.at("dim").get<Index>();
  if (doc.contains("dims")) {
    const auto dims = doc.at("dims").get<std::vector<Index>>();
    if (dims.size() != 2) throw std::invalid_argument("dims must hold two entries");
    base.dim_a = dims[0];
    base.dim_b = dims[1];
  }
  if (doc.contains("m")) base.m = doc.at("m").get<Index>();
  if (doc.contains("trials")) base.trials = doc.at("trials").get<int>();
  if (doc.contains("seed")) base.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("n_max")) base.n_max = doc.at("n_max").get<int>();
  if (doc.contains("epsilon")) base.epsilon = doc.at("epsilon").get<double>();
  if (doc.contains("tolerance")) base.tolerance = doc.at("tolerance").get<double>();
  if (doc.contains("out")) base.out = doc.at("out").get<std::string>();
  if (doc.contains("rho")) base.rho = density_from_json(doc.at("rho"));
  if (doc.contains("sigma")) base.sigma = density_from_json(doc.at("sigma"));
  return base;
}

TrialRecord make_record(int trial, Index dim, Index m, ExtendedReal before, ExtendedReal after,
                        double tolerance) {
  const ExtendedReal slack = before - after;
  return TrialRecord{trial, dim, m, before, after, slack, slack >= ExtendedReal(-tolerance)};
}

double SweepResult::pass_fraction() const {
  if (records.empty()) return 0.0;
  const auto passed = std::count_if(records.begin(), records.end(),
                                    [](const TrialRecord& r) { return r.pass; });
  return static_cast<double>(passed) / static_cast<double>(records.size());
}

ExtendedReal SweepResult::min_slack() const {
  ExtendedReal out = ExtendedReal::plus_infinity();
  for (const auto& r : records) out = std::min(out, r.slack, [](auto& a, auto& b) { return a < b; });
  return out;
}

bool SweepResult::all_pass() const {
  return !records.empty() &&
         std::all_of(records.begin(), records.end(), [](const TrialRecord& r) { return r.pass; });
}

double SweepResult::redraw_rate() const {
  const double attempts = static_cast<double>(records.size() + static_cast<std::size_t>(redraws));
  return attempts > 0 ? redraws / attempts : 0.0;
}

std::vector<SweepResult> run_process(const ExperimentConfig& config) {
  config.validate();
  const Index d = config.dim.value_or(4);
  const Index m = config.m.value_or(2);
  const auto uniform = DensityMatrixd::maximally_mixed(d);
  SweepResult extended{"extended_second_law", {}, 0};
  SweepResult second{"second_law", {}, 0};

  struct Draw {
    CanonicalState mu_g, mu_g2, mu_f, mu_f2;
  };
  for (int t = 0; t < config.trials_or_default(); ++t) {
    RandomStream rng(config.seed, static_cast<std::uint64_t>(t));
    const Draw draw = draw_with_redraws(rng, extended.redraws, [&](RandomStream& r) {
      // Initial level of description; g, g' measured on random states so both are feasible.
      const ObservableSet initial(d, random_observables(r, d, m));
      auto mu_g = canonical_coarse_grain(random_density(r, d), initial);
      auto mu_g2 = canonical_coarse_grain(random_density(r, d), initial);
      // One microscopic process for both preparations.
      const auto u = random_unitary(r, d);
      const ObservableSet final_obs(d, random_observables(r, d, m));
      auto mu_f = canonical_coarse_grain(conjugate(u, mu_g.mu), final_obs);
      auto mu_f2 = canonical_coarse_grain(conjugate(u, mu_g2.mu), final_obs);
      return Draw{std::move(mu_g), std::move(mu_g2), std::move(mu_f), std::move(mu_f2)};
    });
    extended.records.push_back(make_record(t, d, m, relative_entropy(draw.mu_g.mu, draw.mu_g2.mu),
                                           relative_entropy(draw.mu_f.mu, draw.mu_f2.mu),
                                           config.tolerance));
    second.records.push_back(make_record(t, d, m, relative_entropy(draw.mu_g.mu, uniform),
                                         relative_entropy(draw.mu_f.mu, uniform), config.tolerance));
  }
  second.redraws = extended.redraws;
  return {std::move(extended), std::move(second)};
}

SweepResult run_monotonicity(const ExperimentConfig& config) {
  config.validate();
  SweepResult sweep{"monotonicity", {}, 0};
  for (int t = 0; t < config.trials_or_default(); ++t) {
    const Index d = cycled(config.dim, t, 3, 2);
    const Index m = std::min(cycled(config.m, t, 3, 1, 3), d * d - 1);
    RandomStream rng(config.seed, static_cast<std::uint64_t>(t));
    struct Draw {
      DensityMatrixd rho, sigma;
      CanonicalState mu_rho, mu_sigma;
    };
    const Draw draw = draw_with_redraws(rng, sweep.redraws, [&](RandomStream& r) {
      const ObservableSet obs(d, random_observables(r, d, m));
      auto rho = random_density(r, d);
      auto sigma = random_density(r, d);
      auto mu_rho = canonical_coarse_grain(rho, obs);
      auto mu_sigma = canonical_coarse_grain(sigma, obs);
      return Draw{std::move(rho), std::move(sigma), std::move(mu_rho), std::move(mu_sigma)};
    });
    sweep.records.push_back(make_record(t, d, m, relative_entropy(draw.rho, draw.sigma),
                                        relative_entropy(draw.mu_rho.mu, draw.mu_sigma.mu),
                                        config.tolerance));
  }
  return sweep;
}

std::vector<SweepResult> run_product(const ExperimentConfig& config) {
  config.validate();
  const Index da = config.dim_a;
  const Index db = config.dim_b;
  SweepResult product{"product", {}, 0};
  SweepResult marginal{"partial_trace", {}, 0};
  for (int t = 0; t < config.trials_or_default(); ++t) {
    RandomStream rng(config.seed, static_cast<std::uint64_t>(t));
    const auto rho = random_density(rng, da * db);
    const auto sigma = random_density(rng, da * db);
    const auto before = relative_entropy(rho, sigma);
    product.records.push_back(make_record(
        t, da * db, 0, before,
        relative_entropy(product_coarse_grain(rho, da, db), product_coarse_grain(sigma, da, db)),
        config.tolerance));
    marginal.records.push_back(make_record(
        t, da * db, 0, before,
        relative_entropy(partial_trace(rho, da, db, Subsystem::A),
                         partial_trace(sigma, da, db, Subsystem::A)),
        config.tolerance));
  }
  return {std::move(product), std::move(marginal)};
}

SweepResult run_lindblad(const ExperimentConfig& config) {
  config.validate();
  SweepResult sweep{"lindblad", {}, 0};
  for (int t = 0; t < config.trials_or_default(); ++t) {
    const Index d = cycled(config.dim, t, 3, 2);
    const Index rank = cycled(config.m, t, 4, 1, 3);
    RandomStream rng(config.seed, static_cast<std::uint64_t>(t));
    const auto channel = random_kraus(rng, d, rank);
    const auto rho = random_density(rng, d);
    const auto sigma = random_density(rng, d);
    sweep.records.push_back(make_record(
        t, d, rank, relative_entropy(rho, sigma),
        relative_entropy(apply_channel(rho, channel), apply_channel(sigma, channel)),
        config.tolerance));
  }
  return sweep;
}

bool SteinStudy::all_pass(double tolerance) const {
  return std::all_of(series.points.begin(), series.points.end(), [&](const SteinPoint& p) {
    return p.prob >= 0.0 && p.prob <= 1.0 + tolerance && (!p.gap || *p.gap >= -tolerance);
  });
}

SteinStudy run_stein(const ExperimentConfig& config) {
  config.validate();
  std::optional<DensityMatrixd> rho = config.rho;
  std::optional<DensityMatrixd> sigma = config.sigma;
  if (!rho) {
    if (config.dim) {
      RandomStream rng(config.seed, 0);
      rho = random_density(rng, *config.dim);
      sigma = random_density(rng, *config.dim);
    } else {
      rho = DensityMatrixd::diagonal(Eigen::Vector2d(0.9, 0.1));
      sigma = DensityMatrixd::diagonal(Eigen::Vector2d(0.5, 0.5));
    }
  }
  SteinOptions options;
  options.gap_trials = config.trials_or_default();
  options.seed = config.seed;
  options.gap_dim_cap = stein_sampling_dim_cap;
  SteinStudy study{stein_rate_series(*rho, *sigma, config.epsilon, config.n_max_or_default(), options),
                   0};
  for (const auto& p : study.series.points) {
    if (p.gap) study.sampled_up_to = p.copies;
  }
  return study;
}

bool KGBattery::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

KGBattery run_kg_checks(const ExperimentConfig& config) {
  config.validate();
  const int n_max = config.n_max_or_default();
  const int draws = config.trials_or_default();
  constexpr int kTestsPerDraw = 4;
  constexpr int kDiagnosticTests = 25;

  CheckResult defining{"defining_property", 0.0, 1e-9};
  CheckResult linearity{"linearity", 0.0, 1e-10};
  CheckResult idempotency{"idempotency", 0.0, 1e-9};
  CheckResult reproduction{"expectation_reproduction", 0.0, 1e-9};
  CheckResult pairing{"adjoint_pairing", 0.0, 1e-9};
  CheckResult coarse_identity{"coarse_graining_identity", 0.0, 1e-9};
  CheckResult fixed_point{"gamma_at_mu_f", 0.0, 1e-10};
  // Worst shortfall of eps' - (mu_rho^N | Q Gamma) below eps.
  CheckResult constraint{"pairing_constraint_slack", -std::numeric_limits<double>::infinity(), 1e-9};

  KGBattery battery;
  std::vector<KGReportRow> rows;
  for (int n = 1; n <= n_max; ++n) rows.push_back({n, 0.0, std::numeric_limits<double>::infinity(), 0.0});
  std::vector<int> diag_total(static_cast<std::size_t>(n_max), 0);
  std::vector<int> diag_bad(static_cast<std::size_t>(n_max), 0);
  std::vector<int> gamma_total(static_cast<std::size_t>(n_max), 0);
  std::vector<int> gamma_over(static_cast<std::size_t>(n_max), 0);

  std::uint64_t cell = 0;
  for (Index d : {Index{2}, Index{3}}) {
    for (Index m : {Index{1}, Index{2}}) {
      for (int n = 1; n <= n_max; ++n, ++cell) {
        for (int k = 0; k < draws; ++k) {
          RandomStream rng(config.seed, cell * static_cast<std::uint64_t>(draws) + static_cast<std::uint64_t>(k));
          const ObservableSet obs(d, random_observables(rng, d, m));
          const auto rho = random_density(rng, d);
          const auto sigma = random_density(rng, d);
          std::optional<KGProjector> built_rho;
          std::optional<KGProjector> built_sigma;
          try {
            built_rho = kg_build(canonical_coarse_grain(rho, obs));
            built_sigma = kg_build(canonical_coarse_grain(sigma, obs));
          } catch (const ConditioningError&) {
            ++battery.skipped;
            continue;
          } catch (const InfeasibleError&) {
            ++battery.skipped;
            continue;
          }
          const KGProjector& kg_rho = *built_rho;
          const KGProjector& kg_sigma = *built_sigma;
          const KGLift lift_rho = kg_lift(kg_rho, n);
          const KGLift lift_sigma = kg_lift(kg_sigma, n);
          const Index big = lift_rho.mu.dim();
          const auto rho_n = tensor_power(rho.op(), n);
          const auto mu_rho_n = lift_rho.mu;

          double gamma_max = 0.0;
          for (int j = 1; j <= n_max; ++j) {
            gamma_max = std::max(gamma_max, gamma_n(kg_sigma, kg_rho.mu, j));
          }
          const double gamma_here = gamma_n(kg_sigma, kg_rho.mu, n);
          auto& row = rows[static_cast<std::size_t>(n - 1)];
          row.gamma_n = std::max(row.gamma_n, gamma_here);
          ++gamma_total[static_cast<std::size_t>(n - 1)];
          if (gamma_here > 1.0 + 1e-9) ++gamma_over[static_cast<std::size_t>(n - 1)];

          fixed_point.worst = std::max(fixed_point.worst, gamma_n(kg_rho, kg_rho.mu, n));
          ++fixed_point.samples;

          const auto tau = random_density(rng, big);
          const auto image = kg_apply_state(kg_rho, lift_rho, tau.op());
          for (Index a = 0; a < m; ++a) {
            const double err = std::abs(trace_product(lift_rho.averaged[static_cast<std::size_t>(a)], image) -
                                        trace_product(lift_rho.averaged[static_cast<std::size_t>(a)], tau.op()));
            reproduction.worst = std::max(reproduction.worst, err);
          }
          ++reproduction.samples;

          std::optional<EpsilonChoice> eps;
          if (gamma_max < 1.0) {
            eps = epsilon_choices(gamma_max);
          } else {
            ++battery.constraint_inapplicable;
          }

          for (int j = 0; j < kTestsPerDraw; ++j) {
            const auto g1 = random_test_operator(rng, big).op();
            const auto g2 = random_test_operator(rng, big).op();
            const double a = 2.0 * rng.uniform() - 1.0;
            const double b = 2.0 * rng.uniform() - 1.0;

            const auto p_rho_g1 = kg_apply_observable(kg_rho, lift_rho, g1);
            const auto p_sigma_g1 = kg_apply_observable(kg_sigma, lift_sigma, g1);

            defining.worst = std::max(defining.worst, std::abs(trace_product(rho_n, p_rho_g1) -
                                                               trace_product(mu_rho_n, g1)));
            const auto combo = kg_apply_observable(kg_rho, lift_rho, a * g1 + b * g2);
            const auto split = a * p_rho_g1 + b * kg_apply_observable(kg_rho, lift_rho, g2);
            linearity.worst = std::max(linearity.worst, (combo.matrix() - split.matrix()).norm());
            const auto twice = kg_apply_observable(kg_rho, lift_rho, p_sigma_g1);
            idempotency.worst = std::max(idempotency.worst, (twice.matrix() - p_sigma_g1.matrix()).norm());
            pairing.worst = std::max(pairing.worst, std::abs(trace_product(tau.op(), p_rho_g1) -
                                                             trace_product(image, g1)));
            coarse_identity.worst =
                std::max(coarse_identity.worst, std::abs(trace_product(rho_n, p_sigma_g1) -
                                                         trace_product(mu_rho_n, p_sigma_g1)));
            if (eps) {
              const double q_term = trace_product(mu_rho_n, g1 - p_sigma_g1);
              constraint.worst =
                  std::max(constraint.worst, eps->epsilon - (eps->epsilon_prime - q_term));
              ++constraint.samples;
            }
            defining.samples += 1;
            linearity.samples += 1;
            idempotency.samples += 1;
            pairing.samples += 1;
            coarse_identity.samples += 1;
          }

          const auto report = positivity_diagnostic(kg_sigma, n, kDiagnosticTests,
                                                    splitmix64(config.seed ^ (cell << 32) ^ static_cast<std::uint64_t>(k)));
          row.min_eig_p_gamma = std::min(row.min_eig_p_gamma, report.min_eig);
          diag_total[static_cast<std::size_t>(n - 1)] += report.trials;
          diag_bad[static_cast<std::size_t>(n - 1)] += report.violations;
        }
      }
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    rows[i].violation_fraction = diag_total[i] > 0 ? static_cast<double>(diag_bad[i]) / diag_total[i] : 0.0;
    rows[i].gamma_above_one_fraction =
        gamma_total[i] > 0 ? static_cast<double>(gamma_over[i]) / gamma_total[i] : 0.0;
  }
  battery.checks = {defining, linearity, idempotency, reproduction, pairing,
                    coarse_identity, fixed_point, constraint};
  battery.rows = std::move(rows);
  return battery;
}

NonlinearityWitness nonlinearity_witness(int draws, std::uint64_t seed) {
  constexpr double kThreshold = 1e-6;
  int canonical_hits = 0;
  int product_hits = 0;
  for (int k = 0; k < draws; ++k) {
    RandomStream rng(seed, static_cast<std::uint64_t>(k));
    // Qubits with a single observable have an affine MaxEnt map, so start at dim 3.
    const Index d = 3 + k % 2;
    const Index m = 1 + (k / 2) % 2;
    const ObservableSet obs(d, random_observables(rng, d, m));
    const auto r1 = random_density(rng, d);
    const auto r2 = random_density(rng, d);
    const auto mix = DensityMatrixd::assume_valid(0.5 * (r1.op() + r2.op()));
    const auto of_mix = canonical_coarse_grain(mix, obs).mu;
    const auto mix_of = 0.5 * (canonical_coarse_grain(r1, obs).mu.op() +
                               canonical_coarse_grain(r2, obs).mu.op());
    if (trace_distance(of_mix.op(), mix_of) > kThreshold) ++canonical_hits;

    const auto p1 = random_density(rng, 4);
    const auto p2 = random_density(rng, 4);
    const auto pmix = DensityMatrixd::assume_valid(0.5 * (p1.op() + p2.op()));
    const auto p_of_mix = product_coarse_grain(pmix, 2, 2);
    const auto p_mix_of = 0.5 * (product_coarse_grain(p1, 2, 2).op() + product_coarse_grain(p2, 2, 2).op());
    if (trace_distance(p_of_mix.op(), p_mix_of) > kThreshold) ++product_hits;
  }
  const double n = draws > 0 ? static_cast<double>(draws) : 1.0;
  return {draws, canonical_hits / n, product_hits / n};
}

void write_csv(std::ostream& os, const SweepResult& sweep) {
  os << "trial,dim,m,S_before,S_after,slack,pass\n";
  for (const auto& r : sweep.records) {
    os << r.trial << ',' << r.dim << ',' << r.m << ',' << r.s_before.to_string() << ','
       << r.s_after.to_string() << ',' << r.slack.to_string() << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

namespace {

std::string companion_path(const std::string& out, const std::string& name) {
  std::filesystem::path p(out);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + "." + name + ".csv")).string();
}

void summarize(const SweepResult& s, double tolerance, std::vector<std::string>& lines, bool& ok) {
  std::ostringstream os;
  const bool flagged = s.redraw_rate() >= max_redraw_rate;
  os << (s.all_pass() && !flagged ? "PASS " : "FAIL ") << s.name << ": trials=" << s.records.size()
     << " pass_fraction=" << fmt(s.pass_fraction()) << " min_slack=" << s.min_slack().to_string()
     << " tolerance=" << fmt(tolerance) << " redraws=" << s.redraws
     << " redraw_rate=" << fmt(s.redraw_rate());
  if (flagged) os << " [FLAGGED: redraw rate >= " << fmt(max_redraw_rate) << "]";
  lines.push_back(os.str());
  ok = ok && s.all_pass() && !flagged;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config, std::ostream& csv) {
  config.validate();
  RunOutcome outcome{true, {}};
  auto emit_sweeps = [&](const std::vector<SweepResult>& sweeps) {
    write_csv(csv, sweeps.front());
    for (std::size_t i = 1; i < sweeps.size() && !config.out.empty(); ++i) {
      const std::string path = companion_path(config.out, sweeps[i].name);
      std::ofstream file(path);
      if (!file) throw std::runtime_error("cannot open " + path);
      write_csv(file, sweeps[i]);
      outcome.summary.push_back("wrote " + path);
    }
    for (const auto& s : sweeps) summarize(s, config.tolerance, outcome.summary, outcome.ok);
  };

  switch (config.experiment) {
    case Experiment::process:
      emit_sweeps(run_process(config));
      break;
    case Experiment::monotonicity:
      emit_sweeps({run_monotonicity(config)});
      break;
    case Experiment::product:
      emit_sweeps(run_product(config));
      break;
    case Experiment::lindblad:
      emit_sweeps({run_lindblad(config)});
      break;
    case Experiment::stein: {
      const auto study = run_stein(config);
      write_csv(csv, study.series);
      outcome.ok = study.all_pass(config.tolerance);
      std::ostringstream os;
      os << (outcome.ok ? "PASS " : "FAIL ") << "stein: S(rho||sigma)="
         << study.series.relative_entropy.to_string() << " epsilon=" << fmt(config.epsilon)
         << " N_max=" << study.series.points.size()
         << " rate_N_max=" << study.series.points.back().rate.to_string()
         << " gap_sampled_up_to_N=" << study.sampled_up_to;
      outcome.summary.push_back(os.str());
      break;
    }
    case Experiment::kg_checks: {
      const auto battery = run_kg_checks(config);
      write_csv(csv, battery.rows);
      for (const auto& c : battery.checks) {
        std::ostringstream os;
        os << (c.pass() ? "PASS " : "FAIL ") << c.name << ": worst=" << fmt(c.worst)
           << (c.at_least ? " minimum=" : " threshold=") << fmt(c.threshold)
           << " samples=" << c.samples;
        outcome.summary.push_back(os.str());
      }
      for (const auto& r : battery.rows) {
        std::ostringstream os;
        os << "positivity N=" << r.copies << ": min_eig_PGamma=" << fmt(r.min_eig_p_gamma)
           << " violation_fraction=" << fmt(r.violation_fraction)
           << " gamma_N=" << fmt(r.gamma_n)
           << " gamma_above_one_fraction=" << fmt(r.gamma_above_one_fraction) << " (diagnostic)";
        outcome.summary.push_back(os.str());
      }
      outcome.summary.push_back("pairing constraint not applicable (gamma >= 1): " +
                                std::to_string(battery.constraint_inapplicable) + " draws");
      if (battery.skipped > 0) {
        outcome.summary.push_back("skipped draws (ill-conditioned covariance): " +
                                  std::to_string(battery.skipped));
      }
      outcome.ok = battery.all_pass();
      break;
    }
  }
  return outcome;
}

}  // namespace macrolab
