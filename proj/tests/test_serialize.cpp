#include <doctest.h>

#include <cmath>

#include "macrolab/random.hpp"
#include "macrolab/serialize.hpp"

using namespace macrolab;

TEST_CASE("operator round trip is exact") {
  RandomStream rng(501, 0);
  const auto h = random_hermitian(rng, 3);
  const auto doc = to_json(h);
  CHECK(doc.at("dim") == 3);
  CHECK(doc.at("re").size() == 3);
  const auto back = operator_from_json(nlohmann::json::parse(doc.dump()));
  CHECK(back.matrix() == h.matrix());
}

TEST_CASE("operator documents") {
  const auto doc = nlohmann::json::parse(R"({"dim": 2, "re": [[0.5, 0], [0, 0.5]]})");
  CHECK(density_from_json(doc).matrix().isApprox(CMatrix<double>::Identity(2, 2) / 2.0));
  CHECK_THROWS_AS(operator_from_json(nlohmann::json::parse(R"({"dim": 2, "re": [[0, 1], [0, 0]]})")),
                  NotHermitianError);
  CHECK_THROWS_AS(operator_from_json(nlohmann::json::parse(R"({"dim": 3, "re": [[1, 0], [0, 1]]})")),
                  DimensionError);
  CHECK_THROWS_AS(density_from_json(nlohmann::json::parse(R"({"dim": 1, "re": [[2]]})")),
                  InvalidStateError);
  const auto y = nlohmann::json::parse(R"({"dim": 2, "re": [[0, 0], [0, 0]], "im": [[0, -1], [1, 0]]})");
  CHECK(operator_from_json(y).matrix() == pauli::y().matrix());
}

TEST_CASE("observable set and canonical state round trip") {
  RandomStream rng(503, 0);
  const ObservableSet obs(3, random_observables(rng, 3, 2));
  const auto obs_back = observables_from_json(nlohmann::json::parse(to_json(obs).dump()));
  REQUIRE(obs_back.size() == 2);
  CHECK(obs_back[1].matrix() == obs[1].matrix());

  Eigen::VectorXd lambda(2);
  lambda << 0.4, -1.1;
  const auto cs = canonical_from_lambda(obs, lambda);
  const auto doc = to_json(cs);
  for (const char* key : {"observables", "lambda", "f", "logZ", "mu"}) CHECK(doc.contains(key));
  const auto back = canonical_from_json(nlohmann::json::parse(doc.dump()));
  CHECK(back.lambda == cs.lambda);
  CHECK((back.mu.matrix() - cs.mu.matrix()).norm() < 1e-14);
  CHECK(std::abs(back.log_z - cs.log_z) < 1e-14);

  auto tampered = doc;
  tampered["logZ"] = cs.log_z + 1e-3;
  CHECK_THROWS_AS(canonical_from_json(tampered), std::invalid_argument);
}
