#pragma once

#include <string>

#include <json.hpp>

#include "conelat/operators.hpp"
#include "conelat/order_metrics.hpp"
#include "conelat/quasilattice.hpp"
#include "conelat/quasisup.hpp"
#include "conelat/spaces.hpp"

namespace conelat {

using json = nlohmann::json;

json toJson(const Eigen::VectorXd& v);
Eigen::VectorXd vectorFromJson(const json& j);

json toJson(const NormSpec& n);
NormSpec normFromJson(const json& j);

json toJson(const ConeSpec& c);
ConeSpec coneFromJson(const json& j);

json toJson(const OrderedSpace& s);
OrderedSpace spaceFromJson(const json& j);

json toJson(const SolverOptions& o);
SolverOptions solverOptionsFromJson(const json& j);

json toJson(const QuasiSupResult& r);
json toJson(const MinimalityResult& r);
json toJson(const IdentityReport& r);
json toJson(const AndoDecomposition& d);
json toJson(const NormalityReport& r);
json toJson(const ConormalDecomposition& d);
json toJson(const RegularityReport& r);
json toJson(const DualSpotcheckReport& r);
json toJson(const PositivityReport& r);
json toJson(const OperatorNormReport& r);
json toJson(const OperatorExperimentReport& r);

json toJson(const OperatorMatrix& T);
OperatorMatrix operatorFromJson(const json& j);

// parse a vector given either as a JSON array string or comma-separated
// decimals ("1,0,2.5")
Eigen::VectorXd parseVectorArg(const std::string& text);

}  // namespace conelat
