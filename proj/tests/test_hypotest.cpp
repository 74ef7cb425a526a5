#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "macrolab/hypotest.hpp"
#include "macrolab/random.hpp"

using namespace macrolab;

namespace {

// Classical likelihood-ratio test: accept outcomes in decreasing p/q order,
// the last one fractionally, until the p-mass reaches eps.
double knapsack_oracle(const std::vector<double>& p, const std::vector<double>& q, double eps) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p[a] * q[b] > p[b] * q[a];
  });
  double mass = 0.0;
  double cost = 0.0;
  for (std::size_t i : order) {
    if (mass >= eps) break;
    if (p[i] <= 0.0) continue;
    const double take = std::min(1.0, (eps - mass) / p[i]);
    mass += take * p[i];
    cost += take * q[i];
  }
  return cost;
}

std::vector<double> product_distribution(const std::vector<double>& p, int copies) {
  std::vector<double> out{1.0};
  for (int n = 0; n < copies; ++n) {
    std::vector<double> next;
    for (double a : out)
      for (double b : p) next.push_back(a * b);
    out = std::move(next);
  }
  return out;
}

double g_at(const DensityMatrixd& rho, const DensityMatrixd& sigma, double t) {
  const auto d = eig(HermitianOperator::symmetrized(rho.matrix() - t * sigma.matrix()));
  const auto proj = HermitianOperator::symmetrized(d.projector([](double w) { return w > 1e-10; }));
  return trace_product(rho.op(), proj);
}

Eigen::VectorXcd ket(double a, double b) {
  Eigen::VectorXcd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("input validation") {
  const auto r = DensityMatrixd::maximally_mixed(2);
  CHECK_THROWS_AS(np_optimal_test(r, r, 0.0), DomainError);
  CHECK_THROWS_AS(np_optimal_test(r, r, 1.5), DomainError);
  CHECK_THROWS_AS(np_optimal_test(r, DensityMatrixd::maximally_mixed(3), 0.5), DimensionError);
  CHECK_THROWS_AS(prob_eps_tensor(r, r, 0.5, 13), ResourceError);
}

TEST_CASE("identical hypotheses give prob = eps") {
  RandomStream rng(301, 0);
  const auto rho = random_density(rng, 3);
  for (double eps : {0.05, 0.3, 0.5, 0.77, 1.0}) {
    CHECK(std::abs(np_optimal_test(rho, rho, eps).prob - eps) < 1e-9);
  }
  CHECK(std::abs(prob_eps_tensor(rho, rho, 0.4, 5) - 0.4) < 1e-9);
}

TEST_CASE("orthogonal pure states are perfectly distinguishable") {
  const auto z0 = DensityMatrixd::pure(ket(1, 0));
  const auto z1 = DensityMatrixd::pure(ket(0, 1));
  CHECK(np_optimal_test(z0, z1, 1.0).prob == 0.0);
  const auto series = stein_rate_series(z0, z1, 0.5, 4);
  for (const auto& p : series.points) CHECK(p.rate == ExtendedReal::plus_infinity());
  CHECK(series.relative_entropy == ExtendedReal::plus_infinity());
}

TEST_CASE("|0> against |+> at eps = 1") {
  const auto z0 = DensityMatrixd::pure(ket(1, 0));
  const double s = 1.0 / std::sqrt(2.0);
  const auto plus = DensityMatrixd::pure(ket(s, s));
  const auto result = np_optimal_test(z0, plus, 1.0);
  CHECK(std::abs(result.prob - 0.5) < 1e-8);

  // Dense grid over real 2x2 test operators R(theta) diag(a, b) R(theta)^T,
  // each made feasible by mixing with the identity.
  double best = 1.0;
  const int steps = 60;
  for (int i = 0; i < steps; ++i) {
    const double th = M_PI * i / steps;
    Eigen::Matrix2d rot;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    for (int j = 0; j <= 20; ++j) {
      for (int k = 0; k <= 20; ++k) {
        const Eigen::Matrix2d g = rot * Eigen::Vector2d(j / 20.0, k / 20.0).asDiagonal() * rot.transpose();
        const double power = g(0, 0);
        // At eps = 1 the identity mix (eps - power) / (1 - power) is all or nothing.
        const double mix = power < 1.0 - 1e-12 ? 1.0 : 0.0;
        const Eigen::Matrix2d feasible = (1.0 - mix) * g + mix * Eigen::Matrix2d::Identity();
        best = std::min(best, 0.5 * feasible.sum());
      }
    }
  }
  CHECK(best >= result.prob - 1e-9);
  CHECK(best <= result.prob + 1e-9);
}

TEST_CASE("commuting instances match the fractional knapsack oracle") {
  const auto a = DensityMatrixd::diagonal(Eigen::Vector2d(0.9, 0.1));
  const auto b = DensityMatrixd::diagonal(Eigen::Vector2d(0.5, 0.5));
  CHECK(std::abs(np_optimal_test(a, b, 0.95).prob - knapsack_oracle({0.9, 0.1}, {0.5, 0.5}, 0.95)) < 1e-10);
  CHECK(std::abs(np_optimal_test(a, b, 0.95).prob - (0.5 + 0.5 * 0.5)) < 1e-10);

  for (int k = 0; k < 100; ++k) {
    RandomStream rng(303, static_cast<std::uint64_t>(k));
    const Index d = 2 + k % 5;
    std::vector<double> p(static_cast<std::size_t>(d));
    std::vector<double> q(static_cast<std::size_t>(d));
    for (auto& x : p) x = rng.uniform();
    for (auto& x : q) x = rng.uniform() + 1e-3;
    if (k % 4 == 0) p[0] = 0.0;  // rank-deficient rho
    const double ps = std::accumulate(p.begin(), p.end(), 0.0);
    const double qs = std::accumulate(q.begin(), q.end(), 0.0);
    for (auto& x : p) x /= ps;
    for (auto& x : q) x /= qs;
    const double eps = 0.05 + 0.95 * rng.uniform();
    const auto rho = DensityMatrixd::diagonal(Eigen::Map<Eigen::VectorXd>(p.data(), d));
    const auto sigma = DensityMatrixd::diagonal(Eigen::Map<Eigen::VectorXd>(q.data(), d));
    CHECK(std::abs(np_optimal_test(rho, sigma, eps).prob - knapsack_oracle(p, q, eps)) < 1e-10);
  }
}

TEST_CASE("commuting qubit pair on 8 copies matches the product oracle") {
  const std::vector<double> p{0.7, 0.3};
  const std::vector<double> q{0.4, 0.6};
  const auto rho = DensityMatrixd::diagonal(Eigen::Vector2d(p[0], p[1]));
  const auto sigma = DensityMatrixd::diagonal(Eigen::Vector2d(q[0], q[1]));
  for (double eps : {0.2, 0.5, 0.9}) {
    const double oracle = knapsack_oracle(product_distribution(p, 8), product_distribution(q, 8), eps);
    CHECK(std::abs(prob_eps_tensor(rho, sigma, eps, 8) - oracle) < 1e-9);
  }
  CHECK(prob_eps_tensor(rho, sigma, 0.5, 1) == np_optimal_test(rho, sigma, 0.5).prob);
}

TEST_CASE("result invariants on seeded non-commuting pairs") {
  for (int k = 0; k < 60; ++k) {
    RandomStream rng(305, static_cast<std::uint64_t>(k));
    const Index d = 2 + k % 4;
    const auto rho = random_density(rng, d, 1 + k % d);
    const auto sigma = random_density(rng, d);
    const double eps = 0.05 + 0.95 * rng.uniform();
    const auto r = np_optimal_test(rho, sigma, eps);
    CHECK(r.power >= eps - 1e-10);
    CHECK(std::abs(trace_product(rho.op(), r.gamma_op.op()) - r.power) < 1e-10);
    CHECK(std::abs(trace_product(sigma.op(), r.gamma_op.op()) - r.prob) < 1e-10);
    const auto w = eigenvalues(r.gamma_op.op());
    CHECK(w.minCoeff() >= -1e-10);
    CHECK(w.maxCoeff() <= 1.0 + 1e-10);
    CHECK(r.prob >= 0.0);
    CHECK(r.prob <= 1.0 + 1e-12);
  }
}

TEST_CASE("prob is nondecreasing in eps") {
  for (int k = 0; k < 20; ++k) {
    RandomStream rng(307, static_cast<std::uint64_t>(k));
    const Index d = 2 + k % 3;
    const auto rho = random_density(rng, d);
    const auto sigma = random_density(rng, d);
    double prev = 0.0;
    for (int i = 1; i <= 9; ++i) {
      const double prob = np_optimal_test(rho, sigma, i / 10.0).prob;
      CHECK(prob >= prev - 1e-10);
      prev = prob;
    }
  }
}

TEST_CASE("g(t) is nonincreasing and brackets eps at the reported threshold") {
  for (int k = 0; k < 10; ++k) {
    RandomStream rng(309, static_cast<std::uint64_t>(k));
    const auto rho = random_density(rng, 3);
    const auto sigma = random_density(rng, 3);
    double prev = 1.0 + 1e-12;
    for (int i = 0; i <= 200; ++i) {
      const double g = g_at(rho, sigma, 0.05 * i);
      CHECK(g <= prev + 1e-12);
      prev = g;
    }
    const auto r = np_optimal_test(rho, sigma, 0.6);
    CHECK(g_at(rho, sigma, r.threshold_t * (1 + 1e-6)) <= 0.6 + 1e-9);
    CHECK(g_at(rho, sigma, r.threshold_t * (1 - 1e-6)) >= 0.6 - 1e-9);
  }
}

TEST_CASE("data processing at the test level") {
  for (int k = 0; k < 60; ++k) {
    RandomStream rng(311, static_cast<std::uint64_t>(k));
    const Index d = 2 + k % 3;
    const auto rho = random_density(rng, d);
    const auto sigma = random_density(rng, d);
    const auto channel = random_kraus(rng, d, 1 + k % 3);
    const double eps = 0.1 + 0.8 * rng.uniform();
    CHECK(np_optimal_test(apply_channel(rho, channel), apply_channel(sigma, channel), eps).prob >=
          np_optimal_test(rho, sigma, eps).prob - 1e-9);
  }
}

TEST_CASE("sampled feasible tests never beat the optimum") {
  RandomStream rng(313, 0);
  const auto rho = random_density(rng, 2);
  const auto sigma = random_density(rng, 2);
  const double prob = np_optimal_test(rho, sigma, 0.5).prob;
  const double bound = sampled_gamma_bound(rho, sigma, 0.5, 1, 500, 9);
  CHECK(bound >= prob - 1e-9);
  CHECK(bound - prob < 0.05);  // the perturbation draws get close

  CHECK(sampled_gamma_bound(rho, rho, 0.3, 1, 200, 9) >= 0.3 - 1e-9);
  CHECK(sampled_gamma_bound(rho, sigma, 0.7, 2, 200, 10) >= prob_eps_tensor(rho, sigma, 0.7, 2) - 1e-9);
}

TEST_CASE("Stein series") {
  RandomStream rng(315, 0);
  const auto rho = random_density(rng, 2);
  const auto same = stein_rate_series(rho, rho, 0.3, 6);
  for (const auto& p : same.points) {
    CHECK(std::abs(p.rate.value() - (-std::log(0.3) / p.copies)) < 1e-8);
    CHECK_FALSE(p.gap.has_value());
  }

  const auto a = DensityMatrixd::diagonal(Eigen::Vector2d(0.9, 0.1));
  const auto b = DensityMatrixd::diagonal(Eigen::Vector2d(0.5, 0.5));
  SteinOptions options;
  options.gap_trials = 50;
  options.seed = 1;
  options.gap_dim_cap = 8;
  const auto series = stein_rate_series(a, b, 0.5, 10, options);
  REQUIRE(series.points.size() == 10);
  const double kl = 0.9 * std::log(1.8) + 0.1 * std::log(0.2);
  CHECK(std::abs(series.relative_entropy.value() - kl) < 1e-12);
  CHECK(std::abs(series.points[9].rate.value() - kl) < std::abs(series.points[1].rate.value() - kl));
  for (const auto& p : series.points) {
    CHECK(p.gap.has_value() == (p.copies <= 3));
    if (p.gap) CHECK(*p.gap >= -1e-9);
  }

  std::ostringstream os;
  write_csv(os, series);
  std::string header;
  std::getline(std::istringstream(os.str()) >> std::ws, header);
  CHECK(header == "N,prob,rate,relative_entropy,gap");
  CHECK_THROWS_AS(stein_rate_series(a, b, 0.5, 0), DimensionError);
  CHECK_THROWS_AS(stein_rate_series(a, b, 0.5, 13), ResourceError);
}
