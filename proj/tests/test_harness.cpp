#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "macrolab/harness.hpp"
#include "macrolab/random.hpp"

using namespace macrolab;

namespace {

ExperimentConfig config_for(Experiment e, int trials) {
  ExperimentConfig c;
  c.experiment = e;
  c.trials = trials;
  return c;
}

std::string csv_of(const SweepResult& s) {
  std::ostringstream os;
  write_csv(os, s);
  return os.str();
}

CMatrix<double> bell() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return psi * psi.adjoint();
}

}  // namespace

TEST_CASE("experiment names") {
  for (auto e : {Experiment::process, Experiment::monotonicity, Experiment::product,
                 Experiment::lindblad, Experiment::stein, Experiment::kg_checks}) {
    CHECK(parse_experiment(to_string(e)) == e);
  }
  CHECK(to_string(Experiment::kg_checks) == "kg-checks");
  CHECK_FALSE(parse_experiment("nope").has_value());
}

TEST_CASE("config validation and defaults") {
  ExperimentConfig c;
  CHECK(c.trials_or_default() == 1000);
  CHECK(c.tolerance == 1e-9);
  c.experiment = Experiment::stein;
  CHECK(c.n_max_or_default() == 10);
  c.experiment = Experiment::kg_checks;
  CHECK(c.n_max_or_default() == 3);

  auto bad = config_for(Experiment::process, 0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config_for(Experiment::process, 1);
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.epsilon = 1.0;
  CHECK_NOTHROW(bad.validate());
  bad.dim = 5000;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.dim = 2;
  bad.m = 4;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("config from JSON") {
  const auto doc = nlohmann::json::parse(R"({
    "experiment": "product", "dims": [2, 3], "trials": 7, "seed": 99, "epsilon": 0.25,
    "tolerance": 1e-8, "out": "x.csv"
  })");
  const auto c = config_from_json(doc);
  CHECK(c.experiment == Experiment::product);
  CHECK(c.dim_a == 2);
  CHECK(c.dim_b == 3);
  CHECK(c.trials == 7);
  CHECK(c.seed == 99);
  CHECK(c.epsilon == 0.25);
  CHECK(c.tolerance == 1e-8);
  CHECK(c.out == "x.csv");
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"experiment": "bogus"})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"dims": [2]})")), std::invalid_argument);
}

TEST_CASE("trial records") {
  const auto ok = make_record(0, 2, 1, ExtendedReal(0.5), ExtendedReal(0.5 + 5e-10), 1e-9);
  CHECK(ok.pass);
  const auto bad = make_record(1, 2, 1, ExtendedReal(0.5), ExtendedReal(0.5 + 2e-9), 1e-9);
  CHECK_FALSE(bad.pass);
  const auto inf = make_record(2, 2, 1, ExtendedReal::plus_infinity(), ExtendedReal(3.0), 1e-9);
  CHECK(inf.pass);
  CHECK(inf.slack == ExtendedReal::plus_infinity());

  SweepResult s{"x", {ok, bad}, 0};
  CHECK(s.pass_fraction() == 0.5);
  CHECK_FALSE(s.all_pass());
  CHECK(s.min_slack() == bad.slack);
  CHECK(csv_of(s).rfind("trial,dim,m,S_before,S_after,slack,pass\n", 0) == 0);
}

TEST_CASE("pass flag is recomputable from each CSV row") {
  auto c = config_for(Experiment::monotonicity, 30);
  const auto csv = csv_of(run_monotonicity(c));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    const double slack = std::stod(cells[5]);
    CHECK((slack >= -c.tolerance) == (cells[6] == "1"));
    CHECK(std::abs(std::stod(cells[3]) - std::stod(cells[4]) - slack) < 1e-12);
    ++rows;
  }
  CHECK(rows == 30);
}

TEST_CASE("sweeps are deterministic") {
  for (auto e : {Experiment::process, Experiment::monotonicity, Experiment::product, Experiment::lindblad}) {
    auto c = config_for(e, 25);
    std::ostringstream a;
    std::ostringstream b;
    run_experiment(c, a);
    run_experiment(c, b);
    CHECK(a.str() == b.str());
    c.seed = 43;
    std::ostringstream other;
    run_experiment(c, other);
    CHECK(other.str() != a.str());
  }
}

TEST_CASE("process sweep shape") {
  auto c = config_for(Experiment::process, 40);
  const auto sweeps = run_process(c);
  REQUIRE(sweeps.size() == 2);
  CHECK(sweeps[0].name == "extended_second_law");
  CHECK(sweeps[1].name == "second_law");
  CHECK(sweeps[0].records.size() == 40);
  CHECK(sweeps[0].all_pass());
  CHECK(sweeps[1].all_pass());
  for (const auto& r : sweeps[0].records) {
    CHECK(r.dim == 4);
    CHECK(r.m == 2);
  }
}

TEST_CASE("process pipeline special cases") {
  RandomStream rng(601, 0);
  const ObservableSet g(3, random_observables(rng, 3, 2));
  const auto mu_g = canonical_coarse_grain(random_density(rng, 3), g).mu;
  const auto mu_g2 = canonical_coarse_grain(random_density(rng, 3), g).mu;
  const auto before = relative_entropy(mu_g, mu_g2);

  // Identity process observed with the same observables changes nothing.
  const auto identity = CMatrix<double>::Identity(3, 3);
  const auto mu_f = canonical_coarse_grain(conjugate<double>(identity, mu_g), g).mu;
  const auto mu_f2 = canonical_coarse_grain(conjugate<double>(identity, mu_g2), g).mu;
  const auto same = make_record(0, 3, 2, before, relative_entropy(mu_f, mu_f2), 1e-9);
  CHECK(std::abs(same.slack.value()) < 1e-9);

  // No final observables: total coarse graining to the uniform state.
  const ObservableSet none(3, {});
  const auto flat = canonical_coarse_grain(mu_g, none).mu;
  const auto flat2 = canonical_coarse_grain(mu_g2, none).mu;
  const auto after = relative_entropy(flat, flat2);
  CHECK(after.value() == 0.0);
  CHECK(make_record(0, 3, 0, before, after, 1e-9).pass);
}

TEST_CASE("monotonicity special cases") {
  RandomStream rng(603, 0);
  const auto rho = random_density(rng, 3);
  const ObservableSet obs(3, random_observables(rng, 3, 2));
  const auto mu = canonical_coarse_grain(rho, obs).mu;
  CHECK(std::abs(relative_entropy(rho, rho).value()) < 1e-10);
  CHECK(std::abs(relative_entropy(mu, mu).value()) < 1e-10);

  const ObservableSet full(3, random_observables(rng, 3, 8));
  const auto sigma = random_density(rng, 3);
  CHECK(std::abs(relative_entropy(canonical_coarse_grain(rho, full).mu, canonical_coarse_grain(sigma, full).mu).value() -
                 relative_entropy(rho, sigma).value()) < 1e-7);
}

TEST_CASE("product special cases") {
  RandomStream rng(605, 0);
  const auto rho = tensor(random_density(rng, 2), random_density(rng, 2));
  const auto sigma = tensor(random_density(rng, 2), random_density(rng, 2));
  CHECK(std::abs(relative_entropy(product_coarse_grain(rho, 2, 2), product_coarse_grain(sigma, 2, 2)).value() -
                 relative_entropy(rho, sigma).value()) < 1e-10);
  const auto b = DensityMatrixd(bell());
  CHECK(std::abs(relative_entropy(b, b).value()) < 1e-10);
  CHECK(std::abs(relative_entropy(product_coarse_grain(b, 2, 2), product_coarse_grain(b, 2, 2)).value()) < 1e-10);

  auto c = config_for(Experiment::product, 20);
  c.dim_a = 2;
  c.dim_b = 3;
  const auto sweeps = run_product(c);
  REQUIRE(sweeps.size() == 2);
  CHECK(sweeps[1].name == "partial_trace");
  CHECK(sweeps[0].records.front().dim == 6);
}

TEST_CASE("lindblad special cases") {
  RandomStream rng(607, 0);
  const auto rho = random_density(rng, 3);
  const auto sigma = random_density(rng, 3);
  const auto id = KrausSetd::identity(3);
  CHECK(std::abs(relative_entropy(apply_channel(rho, id), apply_channel(sigma, id)).value() -
                 relative_entropy(rho, sigma).value()) < 1e-12);
  const auto dep = KrausSetd::depolarizing(3);
  CHECK(std::abs(relative_entropy(apply_channel(rho, dep), apply_channel(sigma, dep)).value()) < 1e-12);

  const auto sweep = run_lindblad(config_for(Experiment::lindblad, 24));
  for (const auto& r : sweep.records) {
    CHECK(r.dim >= 2);
    CHECK(r.dim <= 4);
    CHECK(r.m >= 1);
    CHECK(r.m <= 4);
  }
}

TEST_CASE("stein study") {
  auto c = config_for(Experiment::stein, 20);
  c.n_max = 6;
  c.epsilon = 0.3;
  RandomStream rng(609, 0);
  const auto rho = random_density(rng, 2);
  c.rho = rho;
  c.sigma = rho;
  const auto study = run_stein(c);
  for (const auto& p : study.series.points) {
    CHECK(std::abs(p.rate.value() + std::log(0.3) / p.copies) < 1e-8);
  }
  CHECK(study.sampled_up_to == 6);
  CHECK(study.all_pass(1e-9));

  auto d = config_for(Experiment::stein, 10);
  const auto def = run_stein(d);
  CHECK(def.series.points.size() == 10);
  CHECK(def.sampled_up_to == 6);  // 2^6 = 64
  CHECK(std::abs(def.series.relative_entropy.value() - 0.3680642) < 1e-7);

  d.sigma.reset();
  d.rho = rho;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("kg battery on a reduced grid") {
  auto c = config_for(Experiment::kg_checks, 3);
  c.n_max = 2;
  const auto battery = run_kg_checks(c);
  CHECK(battery.all_pass());
  CHECK(battery.rows.size() == 2);
  for (const auto& check : battery.checks) CHECK(check.samples > 0);
}

TEST_CASE("nonlinearity witness") {
  const auto w = nonlinearity_witness(40, 5);
  CHECK(w.draws == 40);
  CHECK(w.canonical_fraction >= 0.9);
  CHECK(w.product_fraction >= 0.9);
}

TEST_CASE("run_experiment writes companion CSV files") {
  const auto dir = std::filesystem::temp_directory_path() / "macrolab_harness_test";
  std::filesystem::create_directories(dir);
  auto c = config_for(Experiment::process, 5);
  c.out = (dir / "run.csv").string();
  std::ostringstream primary;
  const auto outcome = run_experiment(c, primary);
  CHECK(outcome.ok);
  const auto companion = dir / "run.second_law.csv";
  REQUIRE(std::filesystem::exists(companion));
  std::ifstream in(companion);
  std::string header;
  std::getline(in, header);
  CHECK(header == "trial,dim,m,S_before,S_after,slack,pass");
  CHECK(primary.str().rfind("trial,dim,m,S_before,S_after,slack,pass\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("redraw rate") {
  SweepResult s{"x", {}, 0};
  CHECK(s.redraw_rate() == 0.0);
  s.records.resize(95);
  s.redraws = 5;
  CHECK(s.redraw_rate() == doctest::Approx(0.05));
}
