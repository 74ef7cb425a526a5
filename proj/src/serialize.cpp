#include "macrolab/serialize.hpp"

#include <cmath>
#include <stdexcept>

namespace macrolab {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Eigen::VectorXd vector_from_json(const json& doc) {
  const auto values = doc.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size()));
}

}  // namespace

json to_json(const HermitianOperator& op) {
  const Index n = op.dim();
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < n; ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Index j = 0; j < n; ++j) {
      re_row.push_back(op.matrix()(i, j).real());
      im_row.push_back(op.matrix()(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermitianOperator operator_from_json(const json& doc) {
  const Index n = doc.at("dim").get<Index>();
  if (n < 1) throw DimensionError("operator JSON: dim must be >= 1");
  const auto& re = doc.at("re");
  const bool has_im = doc.contains("im");
  if (re.size() != static_cast<std::size_t>(n) ||
      (has_im && doc.at("im").size() != static_cast<std::size_t>(n))) {
    throw DimensionError("operator JSON: expected " + std::to_string(n) + " rows");
  }
  CMatrix<double> m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& re_row = re.at(static_cast<std::size_t>(i));
    if (re_row.size() != static_cast<std::size_t>(n)) {
      throw DimensionError("operator JSON: row " + std::to_string(i) + " has wrong length");
    }
    for (Index j = 0; j < n; ++j) {
      const double im = has_im ? doc.at("im").at(static_cast<std::size_t>(i))
                                     .at(static_cast<std::size_t>(j)).get<double>()
                               : 0.0;
      m(i, j) = {re_row.at(static_cast<std::size_t>(j)).get<double>(), im};
    }
  }
  return HermitianOperator(std::move(m));
}

DensityMatrixd density_from_json(const json& doc) { return DensityMatrixd(operator_from_json(doc)); }

json to_json(const ObservableSet& obs) {
  json members = json::array();
  for (const auto& g : obs.members()) members.push_back(to_json(g));
  return json{{"dim", obs.dim()}, {"observables", std::move(members)}};
}

ObservableSet observables_from_json(const json& doc) {
  std::vector<HermitianOperator> members;
  for (const auto& g : doc.at("observables")) members.push_back(operator_from_json(g));
  return ObservableSet(doc.at("dim").get<Index>(), std::move(members));
}

json to_json(const CanonicalState& state) {
  return json{{"observables", to_json(state.observables)},
              {"lambda", vector_to_json(state.lambda)},
              {"f", vector_to_json(state.f)},
              {"logZ", state.log_z},
              {"mu", to_json(state.mu.op())}};
}

CanonicalState canonical_from_json(const json& doc) {
  auto state = canonical_from_lambda(observables_from_json(doc.at("observables")),
                                     vector_from_json(doc.at("lambda")));
  constexpr double tol = 1e-8;
  bool consistent = true;
  if (doc.contains("f")) {
    const Eigen::VectorXd f = vector_from_json(doc.at("f"));
    consistent = consistent && f.size() == state.f.size() &&
                 (f.size() == 0 || (f - state.f).cwiseAbs().maxCoeff() <= tol);
  }
  if (doc.contains("logZ")) {
    consistent = consistent && std::abs(doc.at("logZ").get<double>() - state.log_z) <= tol;
  }
  if (doc.contains("mu")) {
    const auto mu = operator_from_json(doc.at("mu"));
    consistent = consistent && mu.dim() == state.mu.dim() &&
                 (mu.matrix() - state.mu.matrix()).norm() <= tol;
  }
  if (!consistent) {
    throw std::invalid_argument("canonical state JSON: stored f/logZ/mu disagree with lambda");
  }
  return state;
}

}  // namespace macrolab
