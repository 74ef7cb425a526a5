#pragma once

// JSON documents shared by every module.
//
//   operator:        {"dim": n, "re": [[...]], "im": [[...]]}   (row-major)
//   observable set:  {"dim": n, "observables": [operator, ...]}
//   canonical state: {"observables": set, "lambda": [...], "f": [...],
//                     "logZ": x, "mu": operator}

#include <json.hpp>

#include "macrolab/maxent.hpp"

namespace macrolab {

nlohmann::json to_json(const HermitianOperator& op);
nlohmann::json to_json(const ObservableSet& obs);
nlohmann::json to_json(const CanonicalState& state);

HermitianOperator operator_from_json(const nlohmann::json& doc);
DensityMatrixd density_from_json(const nlohmann::json& doc);
ObservableSet observables_from_json(const nlohmann::json& doc);
/// Rebuilds the state from observables and lambda; the stored f, logZ and mu
/// must agree with the rebuilt ones within 1e-8.
CanonicalState canonical_from_json(const nlohmann::json& doc);

}  // namespace macrolab
