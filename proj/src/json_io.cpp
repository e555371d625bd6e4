#include "conelat/json_io.hpp"

#include <sstream>

namespace conelat {

json toJson(const Eigen::VectorXd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Eigen::VectorXd vectorFromJson(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of numbers");
    Eigen::VectorXd v(j.size());
    int i = 0;
    for (const auto& e : j) v[i++] = e.get<double>();
    return v;
}

json toJson(const NormSpec& n) {
    json j;
    if (n.isInf())
        j["p"] = "inf";
    else
        j["p"] = n.p;
    return j;
}

NormSpec normFromJson(const json& j) {
    if (!j.contains("p")) return NormSpec::l2();
    if (j["p"].is_string()) {
        std::string s = j["p"].get<std::string>();
        if (s == "inf" || s == "infinity") return NormSpec::linf();
        throw std::invalid_argument("unknown norm exponent: " + s);
    }
    double p = j["p"].get<double>();
    if (p < 1.0) throw std::invalid_argument("norm exponent must be >= 1");
    return NormSpec::lp(p);
}

namespace {

json matrixToJson(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(r);
    }
    return rows;
}

Eigen::MatrixXd matrixFromJson(const json& j, int expectCols = -1) {
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of rows");
    if (j.empty()) return Eigen::MatrixXd();
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    if (expectCols > 0 && cols != expectCols)
        throw std::invalid_argument("matrix row length mismatch");
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

}  // namespace

json toJson(const ConeSpec& c) {
    json j;
    j["kind"] = c.kindName();
    switch (c.kind()) {
        case ConeSpec::Kind::Standard:
            j["dim"] = c.dim();
            break;
        case ConeSpec::Kind::Lorentz:
            j["axis"] = toJson(c.axis());
            break;
        case ConeSpec::Kind::HalfLorentz:
            j["axis"] = toJson(c.axis());
            j["halfspace"] = toJson(c.halfspaceNormal());
            break;
        case ConeSpec::Kind::Polyhedral:
            j["dim"] = c.dim();
            j["generators"] = matrixToJson(c.generators());
            j["halfspaces"] = matrixToJson(c.halfspaces());
            break;
        case ConeSpec::Kind::PolyNonneg:
            j["grid_points"] = c.grid().size();
            break;
        case ConeSpec::Kind::WeightedLorentz:
            j["weights"] = toJson(c.weights());
            break;
    }
    return j;
}

ConeSpec coneFromJson(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "standard") return ConeSpec::standard(j.at("dim").get<int>());
    if (kind == "lorentz") return ConeSpec::lorentz(vectorFromJson(j.at("axis")));
    if (kind == "half_lorentz")
        return ConeSpec::halfLorentz(vectorFromJson(j.at("axis")),
                                     vectorFromJson(j.at("halfspace")));
    if (kind == "polyhedral") {
        int dim = j.at("dim").get<int>();
        Eigen::MatrixXd G, H;
        if (j.contains("generators")) G = matrixFromJson(j["generators"], dim);
        if (j.contains("halfspaces")) H = matrixFromJson(j["halfspaces"], dim);
        return ConeSpec::polyhedral(dim, G, H);
    }
    if (kind == "polynonneg")
        return ConeSpec::polyNonneg(j.value("grid_points", 257));
    if (kind == "weighted_lorentz")
        return ConeSpec::weightedLorentz(vectorFromJson(j.at("weights")));
    throw std::invalid_argument("unknown cone kind: " + kind);
}

json toJson(const OrderedSpace& s) {
    json j;
    j["dim"] = s.dim;
    j["norm"] = toJson(s.norm);
    j["cone"] = toJson(s.cone);
    j["proper"] = s.proper;
    j["generating"] = s.generating;
    j["strictly_convex"] = s.strictlyConvex();
    j["smooth"] = s.smooth();
    if (s.monotoneHint) j["monotone_hint"] = *s.monotoneHint;
    return j;
}

OrderedSpace spaceFromJson(const json& j) {
    ConeSpec cone = coneFromJson(j.at("cone"));
    NormSpec norm = j.contains("norm") ? normFromJson(j["norm"]) : NormSpec::l2();
    std::optional<bool> hint;
    if (j.contains("monotone_hint") && !j["monotone_hint"].is_null())
        hint = j["monotone_hint"].get<bool>();
    OrderedSpace s = OrderedSpace::make(std::move(cone), norm, hint);
    if (j.contains("dim") && j["dim"].get<int>() != s.dim)
        throw std::invalid_argument("space dim does not match the cone dimension");
    return s;
}

json toJson(const SolverOptions& o) {
    json j;
    j["tol_primal"] = o.tolPrimal;
    j["tol_obj"] = o.tolObjective;
    j["max_iter"] = o.maxIter;
    j["n_restarts"] = o.nRestarts;
    j["seed"] = o.seed;
    if (o.sepTol > 0.0)
        j["sep_tol"] = o.sepTol;
    else
        j["sep_tol"] = nullptr;
    return j;
}

SolverOptions solverOptionsFromJson(const json& j) {
    SolverOptions o;
    o.tolPrimal = j.value("tol_primal", o.tolPrimal);
    o.tolObjective = j.value("tol_obj", o.tolObjective);
    o.maxIter = j.value("max_iter", o.maxIter);
    o.nRestarts = j.value("n_restarts", o.nRestarts);
    o.seed = j.value("seed", o.seed);
    if (j.contains("sep_tol") && !j["sep_tol"].is_null()) o.sepTol = j["sep_tol"].get<double>();
    return o;
}

json toJson(const QuasiSupResult& r) {
    json j;
    j["z"] = toJson(r.z);
    j["sigma"] = r.sigmaValue;
    j["status"] = statusString(r.status);
    j["feasibility_residual"] = r.feasibilityResidual;
    j["optimality_gap_estimate"] = r.optimalityGapEstimate;
    j["iterations"] = r.iterations;
    json w = json::array();
    for (const auto& wit : r.witnesses) w.push_back(toJson(wit));
    j["witnesses"] = w;
    return j;
}

json toJson(const MinimalityResult& r) {
    json j;
    j["minimal"] = r.minimal;
    j["max_advance"] = r.maxAdvance;
    if (r.witness) j["witness"] = toJson(*r.witness);
    return j;
}

json toJson(const IdentityReport& r) {
    json j;
    j["applicable"] = r.applicable;
    j["pass"] = r.pass;
    if (!r.note.empty()) j["note"] = r.note;
    json recs = json::array();
    for (const auto& rec : r.records)
        recs.push_back({{"name", rec.name}, {"max_violation", rec.maxViolation}, {"pass", rec.pass}});
    j["identities"] = recs;
    return j;
}

json toJson(const AndoDecomposition& d) {
    return {{"pos", toJson(d.pos)}, {"neg", toJson(d.neg)}, {"ratio", d.ratio}};
}

json toJson(const NormalityReport& r) {
    json j;
    j["flavor"] = flavorString(r.flavor.kind);
    j["alpha"] = r.flavor.alpha;
    j["approximate"] = r.flavor.approximate;
    j["verdict"] =
        r.verdict == Verdict::HoldsOnSample ? "holds-on-sample" : "counterexample-found";
    j["alpha_lower_bound"] = r.alphaLowerBound;
    j["qualifying_samples"] = r.qualifying;
    if (r.witness) {
        json w;
        w["x"] = toJson(r.witness->x);
        w["y"] = toJson(r.witness->y);
        if (r.witness->z) w["z"] = toJson(*r.witness->z);
        j["witness"] = w;
    }
    return j;
}

json toJson(const ConormalDecomposition& d) {
    json j;
    j["a"] = toJson(d.a);
    if (d.b) j["b"] = toJson(*d.b);
    j["ratio"] = d.ratio;
    j["feasible"] = d.feasible;
    return j;
}

json toJson(const RegularityReport& r) {
    json j;
    j["alpha"] = r.alpha;
    json recs = json::array();
    for (const auto& rec : r.records)
        recs.push_back({{"name", rec.name},
                        {"holds", rec.holds},
                        {"normality_ratio", rec.normalityRatio},
                        {"conormality_ratio", rec.conormalityRatio}});
    j["kinds"] = recs;
    return j;
}

json toJson(const DualSpotcheckReport& r) {
    json j;
    j["flavor"] = flavorString(r.primalFlavor.kind);
    j["alpha"] = r.primalFlavor.alpha;
    j["paired_flavor"] = flavorString(r.pairedFlavor);
    j["primal_holds"] = r.primalHolds;
    j["dual_holds"] = r.dualHolds;
    j["agree"] = r.agree;
    j["primal_ratio"] = r.primalRatio;
    j["dual_ratio"] = r.dualRatio;
    return j;
}

json toJson(const PositivityReport& r) {
    json j;
    j["positive"] = r.positive;
    j["exact"] = r.exact;
    j["worst_violation"] = r.worstViolation;
    j["rays_tested"] = r.raysTested;
    if (r.witnessRay) j["witness_ray"] = toJson(*r.witnessRay);
    return j;
}

json toJson(const OperatorNormReport& r) {
    json j;
    j["op_norm"] = r.opNorm;
    j["robinson_norm_lb"] = r.robinsonNormLb;
    j["positively_attained_gap"] = r.positivelyAttainedGap;
    j["n_rays"] = r.nRays;
    j["refinement_iters"] = r.refinementIters;
    j["pass"] = r.pass;
    return j;
}

json toJson(const OperatorExperimentReport& r) {
    json j;
    j["max_ratio"] = r.maxRatio;
    j["bound"] = r.bound;
    j["trials"] = r.trials;
    j["violations"] = r.violations;
    j["vacuous"] = r.vacuous;
    j["pass"] = r.pass;
    return j;
}

json toJson(const OperatorMatrix& T) {
    json j;
    j["matrix"] = matrixToJson(T.mat);
    j["domain"] = toJson(T.domain);
    j["codomain"] = toJson(T.codomain);
    return j;
}

OperatorMatrix operatorFromJson(const json& j) {
    OrderedSpace dom = spaceFromJson(j.at("domain"));
    OrderedSpace cod = spaceFromJson(j.at("codomain"));
    Eigen::MatrixXd m = matrixFromJson(j.at("matrix"), dom.dim);
    if (m.rows() != cod.dim) throw std::invalid_argument("matrix rows do not match the codomain");
    return makeOperator(std::move(m), std::move(dom), std::move(cod));
}

Eigen::VectorXd parseVectorArg(const std::string& text) {
    std::string t = text;
    if (!t.empty() && t.front() == '[') return vectorFromJson(json::parse(t));
    std::vector<double> vals;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        vals.push_back(std::stod(tok));
    }
    if (vals.empty()) throw std::invalid_argument("empty vector argument");
    Eigen::VectorXd v(static_cast<int>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<int>(i)] = vals[i];
    return v;
}

}  // namespace conelat
