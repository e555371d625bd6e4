#include "conelat/order_metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "conelat/quasilattice.hpp"

namespace conelat {

bool isNormality(Flavor f) {
    return f == Flavor::MaxNormal || f == Flavor::SumNormal || f == Flavor::AbsNormal ||
           f == Flavor::Normal;
}

Flavor dualFlavor(Flavor f) {
    switch (f) {
        case Flavor::MaxNormal: return Flavor::SumConormal;
        case Flavor::SumNormal: return Flavor::MaxConormal;
        case Flavor::AbsNormal: return Flavor::AbsConormal;
        case Flavor::Normal: return Flavor::Conormal;
        case Flavor::SumConormal: return Flavor::MaxNormal;
        case Flavor::MaxConormal: return Flavor::SumNormal;
        case Flavor::AbsConormal: return Flavor::AbsNormal;
        case Flavor::Conormal: return Flavor::Normal;
    }
    return Flavor::Normal;
}

std::string flavorString(Flavor f) {
    switch (f) {
        case Flavor::MaxNormal: return "max-normal";
        case Flavor::SumNormal: return "sum-normal";
        case Flavor::AbsNormal: return "abs-normal";
        case Flavor::Normal: return "normal";
        case Flavor::SumConormal: return "sum-conormal";
        case Flavor::MaxConormal: return "max-conormal";
        case Flavor::AbsConormal: return "abs-conormal";
        case Flavor::Conormal: return "conormal";
    }
    return "?";
}

std::optional<Flavor> flavorFromString(const std::string& s) {
    for (Flavor f : {Flavor::MaxNormal, Flavor::SumNormal, Flavor::AbsNormal, Flavor::Normal,
                     Flavor::SumConormal, Flavor::MaxConormal, Flavor::AbsConormal,
                     Flavor::Conormal})
        if (flavorString(f) == s) return f;
    return std::nullopt;
}

std::vector<OrderSample> makeOrderSamples(const OrderedSpace& space, Flavor kind, int n,
                                          std::uint64_t seed) {
    Rng rng(seed);
    std::vector<OrderSample> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        OrderSample s;
        Eigen::VectorXd c1 = space.cone.sampleMember(rng);
        Eigen::VectorXd c2 = space.cone.sampleMember(rng);
        switch (kind) {
            case Flavor::MaxNormal:
            case Flavor::SumNormal: {
                // z <= x <= y
                s.x = rng.gaussianVector(space.dim);
                s.z = s.x - c1;
                s.y = s.x + c2;
                break;
            }
            case Flavor::AbsNormal: {
                // +-x <= y: x = (c1 - c2)/2, y = (c1 + c2)/2
                s.x = 0.5 * (c1 - c2);
                s.y = 0.5 * (c1 + c2);
                break;
            }
            case Flavor::Normal: {
                // 0 <= x <= y
                s.x = c1;
                s.y = c1 + c2;
                break;
            }
            default:
                throw std::invalid_argument("makeOrderSamples: not a normality flavor");
        }
        out.push_back(std::move(s));
    }
    return out;
}

double normalityRatio(const OrderedSpace& space, Flavor kind, const OrderSample& s) {
    double nx = space.normOf(s.x);
    double denom = 0.0;
    switch (kind) {
        case Flavor::MaxNormal:
            denom = std::max(space.normOf(s.y), space.normOf(*s.z));
            break;
        case Flavor::SumNormal:
            denom = space.normOf(s.y) + space.normOf(*s.z);
            break;
        case Flavor::AbsNormal:
        case Flavor::Normal:
            denom = space.normOf(s.y);
            break;
        default:
            throw std::invalid_argument("normalityRatio: not a normality flavor");
    }
    if (denom <= 0.0) return nx > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return nx / denom;
}

namespace {

bool sampleQualifies(const OrderedSpace& space, Flavor kind, const OrderSample& s, double tol) {
    switch (kind) {
        case Flavor::MaxNormal:
        case Flavor::SumNormal:
            return s.z && orderLeq(space, *s.z, s.x, tol) && orderLeq(space, s.x, s.y, tol);
        case Flavor::AbsNormal:
            return orderLeq(space, s.x, s.y, tol) && orderLeq(space, -s.x, s.y, tol);
        case Flavor::Normal:
            return space.cone.contains(s.x, tol) && orderLeq(space, s.x, s.y, tol);
        default:
            return false;
    }
}

}  // namespace

NormalityReport normalityCheck(const OrderedSpace& space, const PropertyFlavor& flavor,
                               const std::vector<OrderSample>& samples, double tol) {
    if (!isNormality(flavor.kind))
        throw std::invalid_argument("normalityCheck needs a normality flavor");
    if (flavor.alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    NormalityReport rep;
    rep.flavor = flavor;
    for (const auto& s : samples) {
        if (!sampleQualifies(space, flavor.kind, s, tol)) continue;
        ++rep.qualifying;
        double ratio = normalityRatio(space, flavor.kind, s);
        if (ratio > rep.alphaLowerBound) {
            rep.alphaLowerBound = ratio;
            if (ratio > flavor.alpha * (1.0 + 1e-12) + tol) {
                rep.verdict = Verdict::CounterexampleFound;
                rep.witness = s;
            }
        }
    }
    if (rep.qualifying == 0) throw std::runtime_error("normalityCheck: no qualifying sample");
    return rep;
}

ConormalDecomposition conormalitySolve(const OrderedSpace& space, Flavor kind,
                                       const Eigen::VectorXd& x, double tol,
                                       const SolverOptions& opts) {
    if (isNormality(kind)) throw std::invalid_argument("conormalitySolve needs a conormal flavor");
    ConormalDecomposition d;
    const double nx = space.normOf(x);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(space.dim);
    if (nx == 0.0) {
        d.a = zero;
        if (kind == Flavor::SumConormal || kind == Flavor::MaxConormal) d.b = zero;
        d.ratio = 1.0;
        return d;
    }

    ConsensusOptions copts;
    copts.gamma = opts.gamma;
    copts.relaxation = opts.relaxation;
    copts.maxIter = opts.maxIter;
    copts.tolPrimal = opts.tolPrimal;
    copts.tolObjective = opts.tolObjective;

    switch (kind) {
        case Flavor::SumConormal: {
            // min ||a|| + ||a - x|| over a >= {0, x}: exactly the distance-sum
            // minimization for the pair {0, x}
            QuasiSupResult qs = quasiSup(space, zero, x, opts);
            if (!qs.ok()) {
                d.feasible = false;
                return d;
            }
            d.a = qs.z;
            d.b = qs.z - x;
            d.ratio = qs.sigmaValue / nx;
            return d;
        }
        case Flavor::AbsConormal: {
            if (!opts.forceGeneralPath && space.norm.p == 2.0 &&
                space.cone.kind() == ConeSpec::Kind::Lorentz) {
                d.a = lorentzAbs(x, space.cone.axis());
                d.ratio = space.normOf(d.a) / nx;
                return d;
            }
            std::vector<prox::Term> terms;
            terms.push_back(prox::NormDistance{zero, space.norm.p, 1.0});
            terms.push_back(prox::TranslatedCone{x, +1.0, space.cone});
            terms.push_back(prox::TranslatedCone{-x, +1.0, space.cone});
            Eigen::VectorXd start = x + space.cone.upperBoundShift(-x - x);
            ConsensusResult cr = consensusSolve(terms, start, copts);
            d.feasible = cr.converged;
            d.a = cr.point;
            d.ratio = space.normOf(d.a) / nx;
            return d;
        }
        case Flavor::Conormal: {
            if (!opts.forceGeneralPath && space.cone.kind() == ConeSpec::Kind::Standard &&
                space.norm.strictlyConvex()) {
                d.a = x.cwiseMax(0.0);
                d.ratio = space.normOf(d.a) / nx;
                return d;
            }
            std::vector<prox::Term> terms;
            terms.push_back(prox::NormDistance{zero, space.norm.p, 1.0});
            terms.push_back(prox::TranslatedCone{zero, +1.0, space.cone});
            terms.push_back(prox::TranslatedCone{x, +1.0, space.cone});
            Eigen::VectorXd start = x + space.cone.upperBoundShift(-x);
            ConsensusResult cr = consensusSolve(terms, start, copts);
            d.feasible = cr.converged;
            d.a = cr.point;
            d.ratio = space.normOf(d.a) / nx;
            return d;
        }
        case Flavor::MaxConormal: {
            // bisection on r over the feasibility of
            // {a : a in C, a - x in C, ||a|| <= r, ||a - x|| <= r}
            ConormalDecomposition sum = conormalitySolve(space, Flavor::SumConormal, x, tol, opts);
            if (!sum.feasible) {
                d.feasible = false;
                return d;
            }
            double hi = std::max(space.normOf(sum.a), space.normOf(*sum.b)),
                   lo = 0.5 * nx;
            hi = std::max(hi, lo);
            Eigen::VectorXd feasPoint = sum.a;
            const double feasTol = 1e-7 * (1.0 + nx);
            for (int it = 0; it < 40 && hi - lo > 1e-9 * (1.0 + nx); ++it) {
                double r = 0.5 * (lo + hi);
                std::vector<prox::Term> sets;
                sets.push_back(prox::TranslatedCone{zero, +1.0, space.cone});
                sets.push_back(prox::TranslatedCone{x, +1.0, space.cone});
                sets.push_back(prox::LpBall{zero, r, space.norm.p});
                sets.push_back(prox::LpBall{x, r, space.norm.p});
                FeasibilityResult fr = averagedProjectionFeasibility(sets, feasPoint);
                if (fr.maxDistance <= feasTol) {
                    hi = r;
                    feasPoint = fr.point;
                } else {
                    lo = r;
                }
            }
            d.a = feasPoint;
            d.b = feasPoint - x;
            d.ratio = std::max(space.normOf(d.a), space.normOf(*d.b)) / nx;
            return d;
        }
        default:
            throw std::invalid_argument("unsupported conormal flavor");
    }
}

double conormalityConstantEstimate(const OrderedSpace& space, Flavor kind, int nSamples,
                                   std::uint64_t seed, const SolverOptions& opts) {
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < nSamples; ++i) {
        Eigen::VectorXd x = rng.gaussianVector(space.dim);
        double nx = space.normOf(x);
        if (nx < 1e-12) continue;
        x /= nx;
        ConormalDecomposition d = conormalitySolve(space, kind, x, 1e-8, opts);
        if (d.feasible) worst = std::max(worst, d.ratio);
    }
    return worst;
}

RegularityReport regularityClassify(const OrderedSpace& space, double alpha, int nSamples,
                                    std::uint64_t seed, const SolverOptions& opts) {
    RegularityReport rep;
    rep.alpha = alpha;
    auto normalSide = [&](Flavor f) {
        auto samples = makeOrderSamples(space, f, nSamples, seed);
        NormalityReport nr = normalityCheck(space, {f, alpha, false}, samples);
        return nr;
    };
    auto conormalSide = [&](Flavor f) {
        return conormalityConstantEstimate(space, f, std::max(1, nSamples / 5), seed + 1, opts);
    };
    const double slack = 1e-6;

    struct Pair {
        const char* name;
        Flavor normality;
        Flavor conormality;
    };
    for (const Pair& p : {Pair{"ellis-grosberg-krein", Flavor::MaxNormal, Flavor::SumConormal},
                          Pair{"batty-robinson", Flavor::SumNormal, Flavor::MaxConormal},
                          Pair{"absolute-davies-ng", Flavor::AbsNormal, Flavor::AbsConormal},
                          Pair{"davies-ng", Flavor::Normal, Flavor::Conormal}}) {
        NormalityReport nr = normalSide(p.normality);
        double cr = conormalSide(p.conormality);
        RegularityRecord rec;
        rec.name = p.name;
        rec.normalityRatio = nr.alphaLowerBound;
        rec.conormalityRatio = cr;
        rec.holds = nr.verdict == Verdict::HoldsOnSample && cr <= alpha * (1.0 + slack) + slack;
        rep.records.push_back(rec);
    }
    // Ando regularity: generating cone plus max-normality at the tested level
    NormalityReport nr = normalSide(Flavor::MaxNormal);
    RegularityRecord ando;
    ando.name = "ando";
    ando.normalityRatio = nr.alphaLowerBound;
    ando.conormalityRatio = 0.0;
    ando.holds = space.generating && nr.verdict == Verdict::HoldsOnSample;
    rep.records.push_back(ando);
    return rep;
}

DualSpotcheckReport dualNormalitySpotcheck(const OrderedSpace& space, const PropertyFlavor& flavor,
                                           int nSamples, std::uint64_t seed,
                                           const SolverOptions& opts) {
    DualSpotcheckReport rep;
    rep.primalFlavor = flavor;
    rep.pairedFlavor = dualFlavor(flavor.kind);
    OrderedSpace dual = space.dualSpace();
    const double slack = 1e-6;

    auto checkOn = [&](const OrderedSpace& sp, Flavor f, double alpha, double& ratioOut) {
        if (isNormality(f)) {
            auto samples = makeOrderSamples(sp, f, nSamples, seed);
            NormalityReport nr = normalityCheck(sp, {f, alpha, false}, samples);
            ratioOut = nr.alphaLowerBound;
            return nr.verdict == Verdict::HoldsOnSample;
        }
        double est = conormalityConstantEstimate(sp, f, std::max(1, nSamples / 5), seed, opts);
        ratioOut = est;
        return est <= alpha * (1.0 + slack) + slack;
    };

    rep.primalHolds = checkOn(space, flavor.kind, flavor.alpha, rep.primalRatio);
    rep.dualHolds = checkOn(dual, rep.pairedFlavor, flavor.alpha, rep.dualRatio);
    rep.agree = rep.primalHolds == rep.dualHolds;
    return rep;
}

}  // namespace conelat
