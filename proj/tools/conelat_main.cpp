// conelat: quasi-lattice operations on ordered Banach spaces over JSON files.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "conelat/harness.hpp"
#include "conelat/json_io.hpp"

namespace {

using conelat::json;

std::uint64_t envSeedDefault() {
    if (const char* s = std::getenv("CONELAT_SEED")) return std::strtoull(s, nullptr, 10);
    return 0;
}

json loadJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return json::parse(in);
}

conelat::OrderedSpace loadSpace(const std::string& path) {
    return conelat::spaceFromJson(loadJsonFile(path));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct CommonOpts {
    std::string spacePath;
    std::uint64_t seed = envSeedDefault();
    conelat::SolverOptions solver() const {
        conelat::SolverOptions o;
        o.seed = seed;
        return o;
    }
};

json caseToJson(const conelat::CaseReport& r) {
    json j;
    j["case_id"] = r.id;
    j["pass"] = r.pass;
    j["reference_case"] = r.exact;
    j["deviations"] = r.deviations;
    j["runtime_ms"] = r.runtimeMs;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-lattice operations on pre-ordered Banach spaces"};
    app.require_subcommand(1);

    try {
        CommonOpts common;

        // ---- quasisup ------------------------------------------------------
        auto* qs = app.add_subcommand("quasisup", "quasi-supremum of two vectors");
        std::string qsSpace, qsX, qsY, qsOpts;
        bool qsSplitting = false;
        qs->add_option("--space", qsSpace, "ordered-space JSON file")->required();
        qs->add_option("--x", qsX, "first vector (comma separated or JSON array)")->required();
        qs->add_option("--y", qsY, "second vector")->required();
        qs->add_option("--opts", qsOpts, "solver options JSON file");
        qs->add_option("--seed", common.seed, "restart seed");
        qs->add_flag("--splitting", qsSplitting, "force the splitting path (skip closed forms)");

        // ---- abs / posneg ---------------------------------------------------
        auto* ab = app.add_subcommand("abs", "quasi-absolute value");
        std::string abSpace, abX;
        ab->add_option("--space", abSpace)->required();
        ab->add_option("--x", abX)->required();
        ab->add_option("--seed", common.seed);

        auto* pn = app.add_subcommand("posneg", "positive/negative parts and the norm ratio");
        std::string pnSpace, pnX;
        pn->add_option("--space", pnSpace)->required();
        pn->add_option("--x", pnX)->required();
        pn->add_option("--seed", common.seed);

        // ---- check ----------------------------------------------------------
        auto* ck = app.add_subcommand("check", "property checkers and estimators");
        ck->require_subcommand(1);
        std::string ckSpace, ckFlavor = "normal", ckOp, ckX;
        double ckAlpha = 1.0, ckTol = 1e-6;
        int ckSamples = 1000;
        std::uint64_t ckSeed = envSeedDefault();

        auto addCommon = [&](CLI::App* sub, bool needsSpace) {
            if (needsSpace) sub->add_option("--space", ckSpace)->required();
            sub->add_option("--samples", ckSamples);
            sub->add_option("--seed", ckSeed);
            sub->add_option("--tol", ckTol);
        };
        auto* ckId = ck->add_subcommand("identities", "quasi-lattice identity suite");
        addCommon(ckId, true);
        auto* ckNo = ck->add_subcommand("normality", "normality flavor on constructed samples");
        addCommon(ckNo, true);
        ckNo->add_option("--flavor", ckFlavor, "max-normal|sum-normal|abs-normal|normal");
        ckNo->add_option("--alpha", ckAlpha);
        auto* ckCo = ck->add_subcommand("conormality", "conormality constant estimate");
        addCommon(ckCo, true);
        ckCo->add_option("--flavor", ckFlavor, "sum-conormal|max-conormal|abs-conormal|conormal");
        ckCo->add_option("--x", ckX, "solve the decomposition for one vector instead");
        auto* ckRe = ck->add_subcommand("regularity", "regularity classification");
        addCommon(ckRe, true);
        ckRe->add_option("--alpha", ckAlpha);
        auto* ckDu = ck->add_subcommand("duality", "normality/conormality dual spot check");
        addCommon(ckDu, true);
        ckDu->add_option("--flavor", ckFlavor);
        ckDu->add_option("--alpha", ckAlpha);
        auto* ckOpPos = ck->add_subcommand("operator", "operator positivity");
        ckOpPos->add_option("--op", ckOp, "operator JSON file")->required();
        ckOpPos->add_option("--samples", ckSamples);
        ckOpPos->add_option("--seed", ckSeed);
        ckOpPos->add_option("--tol", ckTol);
        auto* ckAt = ck->add_subcommand("attained", "positively attained operator norm gap");
        ckAt->add_option("--op", ckOp, "operator JSON file")->required();
        ckAt->add_option("--samples", ckSamples);
        ckAt->add_option("--seed", ckSeed);
        ckAt->add_option("--tol", ckTol);

        // ---- reproduce ------------------------------------------------------
        auto* re = app.add_subcommand("reproduce", "conformance harness");
        bool reAll = false;
        std::string reCase, reFilter;
        std::uint64_t reSeed = envSeedDefault();
        re->add_flag("--all", reAll, "run every registered case");
        re->add_option("--case", reCase, "run a single case id");
        re->add_option("--filter", reFilter, "run cases whose id contains this substring");
        re->add_option("--seed", reSeed);

        // ---- oracle ---------------------------------------------------------
        auto* orc = app.add_subcommand("oracle", "brute-force grid quasi-supremum");
        std::string orSpace, orX, orY;
        int orGrid = 81;
        orc->add_option("--space", orSpace)->required();
        orc->add_option("--x", orX)->required();
        orc->add_option("--y", orY)->required();
        orc->add_option("--grid", orGrid, "points per axis");

        CLI11_PARSE(app, argc, argv);

        if (qs->parsed()) {
            conelat::OrderedSpace space = loadSpace(qsSpace);
            conelat::SolverOptions opts =
                qsOpts.empty() ? common.solver() : conelat::solverOptionsFromJson(loadJsonFile(qsOpts));
            if (qsOpts.empty()) opts.seed = common.seed;
            opts.forceGeneralPath = qsSplitting;
            conelat::QuasiSupResult r =
                conelat::quasiSup(space, conelat::parseVectorArg(qsX),
                                  conelat::parseVectorArg(qsY), opts);
            json out = conelat::toJson(r);
            out["seed"] = opts.seed;
            emit(out);
            return r.status == conelat::SolveStatus::Infeasible ? 2 : 0;
        }
        if (ab->parsed()) {
            conelat::OrderedSpace space = loadSpace(abSpace);
            conelat::SolverOptions opts = common.solver();
            conelat::QuasiSupResult r =
                conelat::quasiAbs(space, conelat::parseVectorArg(abX), opts);
            json out = conelat::toJson(r);
            out["seed"] = opts.seed;
            emit(out);
            return r.status == conelat::SolveStatus::Infeasible ? 2 : 0;
        }
        if (pn->parsed()) {
            conelat::OrderedSpace space = loadSpace(pnSpace);
            conelat::SolverOptions opts = common.solver();
            conelat::AndoDecomposition d =
                conelat::andoDecompose(space, conelat::parseVectorArg(pnX), opts);
            json out = conelat::toJson(d);
            out["seed"] = opts.seed;
            emit(out);
            return 0;
        }
        if (ck->parsed()) {
            conelat::SolverOptions opts;
            opts.seed = ckSeed;
            json out;
            if (ckId->parsed()) {
                conelat::OrderedSpace space = loadSpace(ckSpace);
                conelat::Rng rng(ckSeed);
                int applicable = 0, failures = 0;
                double worst = 0.0;
                opts.nRestarts = 2;
                for (int i = 0; i < ckSamples; ++i) {
                    conelat::IdentityReport ir = conelat::identitySuite(
                        space, rng.gaussianVector(space.dim), rng.gaussianVector(space.dim),
                        rng.gaussianVector(space.dim), ckTol, opts);
                    if (!ir.applicable) continue;
                    ++applicable;
                    if (!ir.pass) ++failures;
                    for (const auto& rec : ir.records) worst = std::max(worst, rec.maxViolation);
                }
                out["applicable_triples"] = applicable;
                out["failing_triples"] = failures;
                out["max_violation"] = worst;
                out["pass"] = failures == 0 && applicable > 0;
            } else if (ckNo->parsed()) {
                conelat::OrderedSpace space = loadSpace(ckSpace);
                auto flavor = conelat::flavorFromString(ckFlavor);
                if (!flavor || !conelat::isNormality(*flavor))
                    throw std::invalid_argument("not a normality flavor: " + ckFlavor);
                auto samples = conelat::makeOrderSamples(space, *flavor, ckSamples, ckSeed);
                out = conelat::toJson(
                    conelat::normalityCheck(space, {*flavor, ckAlpha, false}, samples));
            } else if (ckCo->parsed()) {
                conelat::OrderedSpace space = loadSpace(ckSpace);
                auto flavor = conelat::flavorFromString(ckFlavor);
                if (!flavor || conelat::isNormality(*flavor))
                    throw std::invalid_argument("not a conormality flavor: " + ckFlavor);
                if (!ckX.empty()) {
                    out = conelat::toJson(conelat::conormalitySolve(
                        space, *flavor, conelat::parseVectorArg(ckX), 1e-8, opts));
                } else {
                    double est = conelat::conormalityConstantEstimate(space, *flavor, ckSamples,
                                                                      ckSeed, opts);
                    out["flavor"] = ckFlavor;
                    out["estimate_lower_bound"] = est;
                    out["samples"] = ckSamples;
                }
            } else if (ckRe->parsed()) {
                conelat::OrderedSpace space = loadSpace(ckSpace);
                out = conelat::toJson(
                    conelat::regularityClassify(space, ckAlpha, ckSamples, ckSeed, opts));
            } else if (ckDu->parsed()) {
                conelat::OrderedSpace space = loadSpace(ckSpace);
                auto flavor = conelat::flavorFromString(ckFlavor);
                if (!flavor) throw std::invalid_argument("unknown flavor: " + ckFlavor);
                out = conelat::toJson(conelat::dualNormalitySpotcheck(
                    space, {*flavor, ckAlpha, false}, ckSamples, ckSeed, opts));
            } else if (ckOpPos->parsed()) {
                conelat::OperatorMatrix T = conelat::operatorFromJson(loadJsonFile(ckOp));
                out = conelat::toJson(conelat::operatorPositive(T, ckTol, ckSamples, ckSeed));
            } else if (ckAt->parsed()) {
                conelat::OperatorMatrix T = conelat::operatorFromJson(loadJsonFile(ckOp));
                out = conelat::toJson(
                    conelat::positivelyAttainedCheck(T, ckTol, ckSamples, 50, ckSeed));
            }
            out["seed"] = ckSeed;
            emit(out);
            return 0;
        }
        if (re->parsed()) {
            if (!reCase.empty()) {
                if (!conelat::knownCase(reCase)) {
                    std::cerr << "unknown case: " << reCase << "\n";
                    return 1;
                }
                conelat::CaseReport r = conelat::runCase(reCase, reSeed);
                emit(caseToJson(r));
                return r.pass ? 0 : (r.exact ? 3 : 4);
            }
            if (!reAll && reFilter.empty()) {
                std::cerr << "reproduce needs --all, --case or --filter\n";
                return 1;
            }
            conelat::ConformanceReport rep = conelat::runAll(reSeed, reFilter);
            json out;
            out["seed"] = rep.seed;
            out["total_ms"] = rep.totalMs;
            out["overall_pass"] = rep.overallPass;
            out["reference_cases_pass"] = rep.referencePass;
            json cases = json::array();
            for (const auto& c : rep.cases) cases.push_back(caseToJson(c));
            out["cases"] = cases;
            emit(out);
            return rep.referencePass ? 0 : 3;
        }
        if (orc->parsed()) {
            conelat::OrderedSpace space = loadSpace(orSpace);
            conelat::GridSpec grid;
            grid.pointsPerAxis = orGrid;
            conelat::QuasiSupResult r =
                conelat::bruteForceQuasiSup(space, conelat::parseVectorArg(orX),
                                            conelat::parseVectorArg(orY), grid);
            emit(conelat::toJson(r));
            return r.status == conelat::SolveStatus::Infeasible ? 2 : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
