#include "conelat/quasisup.hpp"

#include <algorithm>
#include <cmath>

#include "conelat/rng.hpp"

namespace conelat {

std::string statusString(SolveStatus s) {
    switch (s) {
        case SolveStatus::Unique: return "unique";
        case SolveStatus::FlatMinimum: return "flat_minimum";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::MaxIter: return "max_iter";
    }
    return "?";
}

double sigmaDistanceSum(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& z, const NormSpec& norm) {
    if (x.size() != y.size() || x.size() != z.size())
        throw std::invalid_argument("sigma: dimension mismatch");
    return norm.value(z - x) + norm.value(z - y);
}

Eigen::VectorXd lorentzAbs(const Eigen::VectorXd& w, const Eigen::VectorXd& axis) {
    double s = axis.dot(w);
    Eigen::VectorXd pw = w - s * axis;
    double npw = pw.norm();
    if (npw < 1e-14 * (1.0 + std::abs(s))) return std::abs(s) * axis;
    // orthonormal extreme directions of the cone slice in span{w, axis}
    Eigen::VectorXd ep = (pw + npw * axis) / (std::sqrt(2.0) * npw);
    Eigen::VectorXd em = (-pw + npw * axis) / (std::sqrt(2.0) * npw);
    double ap = w.dot(ep);
    double am = w.dot(em);
    return std::abs(ap) * ep + std::abs(am) * em;
}

namespace {

bool lexLess(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol = 1e-9) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - tol) return true;
        if (a[i] > b[i] + tol) return false;
    }
    return false;
}

double upperBoundResidual(const OrderedSpace& space, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y, const Eigen::VectorXd& z) {
    return std::max(space.cone.residual(z - x), space.cone.residual(z - y));
}

QuasiSupResult closedFormResult(const OrderedSpace& space, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y, const Eigen::VectorXd& z) {
    QuasiSupResult r;
    r.z = z;
    r.sigmaValue = sigmaDistanceSum(x, y, z, space.norm);
    r.status = SolveStatus::Unique;
    r.feasibilityResidual = std::max(0.0, upperBoundResidual(space, x, y, z));
    r.optimalityGapEstimate = 0.0;
    return r;
}

// project onto the feasible set (x + C) cap (y + C)
Eigen::VectorXd projectFeasible(const OrderedSpace& space, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y, const Eigen::VectorXd& p) {
    std::vector<std::function<Eigen::VectorXd(const Eigen::VectorXd&)>> projs;
    const ConeSpec& cone = space.cone;
    projs.push_back(
        [&](const Eigen::VectorXd& u) -> Eigen::VectorXd { return x + cone.project(u - x); });
    projs.push_back(
        [&](const Eigen::VectorXd& u) -> Eigen::VectorXd { return y + cone.project(u - y); });
    return dykstraProject(p, projs, 1e-11);
}

struct RunOutcome {
    Eigen::VectorXd z;
    double sigma;
    double residual;
    int iterations;
    bool converged;
};

RunOutcome runSplit(const OrderedSpace& space, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& start, const SolverOptions& opts) {
    std::vector<prox::Term> terms;
    terms.push_back(prox::NormDistance{x, space.norm.p, 1.0});
    terms.push_back(prox::NormDistance{y, space.norm.p, 1.0});
    terms.push_back(prox::TranslatedCone{x, +1.0, space.cone});
    terms.push_back(prox::TranslatedCone{y, +1.0, space.cone});

    ConsensusOptions copts;
    copts.gamma = opts.gamma;
    copts.relaxation = opts.relaxation;
    copts.maxIter = opts.maxIter;
    copts.tolPrimal = opts.tolPrimal;
    copts.tolObjective = opts.tolObjective;

    ConsensusResult cr = consensusSolve(terms, start, copts);
    RunOutcome out;
    out.z = cr.point;
    out.sigma = cr.objective;
    out.residual = cr.residual;
    out.iterations = cr.iterations;
    out.converged = cr.converged;
    return out;
}

}  // namespace

QuasiSupResult quasiSup(const OrderedSpace& space, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y, const SolverOptions& opts) {
    if (x.size() != space.dim || y.size() != space.dim)
        throw std::invalid_argument("quasiSup: dimension mismatch");

    const double scale = space.normOf(x - y);

    if (!opts.forceGeneralPath && space.norm.p == 2.0 &&
        space.cone.kind() == ConeSpec::Kind::Lorentz) {
        // x v y = (x+y)/2 + |x-y|/2 with the quasi-absolute value from the
        // 2-plane reduction
        Eigen::VectorXd z = 0.5 * (x + y) + 0.5 * lorentzAbs(x - y, space.cone.axis());
        return closedFormResult(space, x, y, z);
    }
    if (!opts.forceGeneralPath && space.cone.kind() == ConeSpec::Kind::Standard &&
        space.norm.strictlyConvex()) {
        // lattice cone with a strictly convex monotone norm: the coordinatewise
        // maximum dominates every upper bound coordinatewise, hence minimizes
        // both distances at once
        return closedFormResult(space, x, y, x.cwiseMax(y));
    }

    QuasiSupResult result;
    Eigen::VectorXd anchor;
    try {
        anchor = upperBoundAny(space, x, y);
    } catch (const std::exception&) {
        result.status = SolveStatus::Infeasible;
        result.z = Eigen::VectorXd::Zero(space.dim);
        result.sigmaValue = std::numeric_limits<double>::quiet_NaN();
        return result;
    }

    Rng rng(opts.seed);
    std::vector<RunOutcome> runs;
    runs.push_back(runSplit(space, x, y, anchor, opts));
    for (int k = 1; k <= opts.nRestarts; ++k) {
        Eigen::VectorXd start = anchor + (1.0 + scale) * rng.gaussianVector(space.dim);
        runs.push_back(runSplit(space, x, y, start, opts));
    }

    std::vector<const RunOutcome*> good;
    for (const auto& r : runs)
        if (r.converged) good.push_back(&r);
    if (good.empty()) {
        const RunOutcome* best = &runs.front();
        for (const auto& r : runs)
            if (r.sigma < best->sigma) best = &r;
        result.z = best->z;
        result.sigmaValue = best->sigma;
        result.status = SolveStatus::MaxIter;
        result.feasibilityResidual = best->residual;
        result.iterations = best->iterations;
        return result;
    }

    double bestSigma = good.front()->sigma;
    for (const auto* r : good) bestSigma = std::min(bestSigma, r->sigma);

    const double sep = opts.sepTolFor(scale);
    const double flatSigmaTol = std::max(opts.tolObjective, 1e-9 * (1.0 + bestSigma));

    // cluster the converged minimizers that share the optimal value
    std::vector<Eigen::VectorXd> reps;
    int iterations = 0;
    for (const auto* r : good) {
        iterations = std::max(iterations, r->iterations);
        if (r->sigma > bestSigma + flatSigmaTol) continue;
        bool fresh = true;
        for (const auto& rep : reps) fresh = fresh && ((rep - r->z).norm() > sep);
        if (fresh) reps.push_back(r->z);
    }

    if (reps.size() < 2) {
        // restarts agreed: probe for a flat valley around the minimizer before
        // declaring uniqueness
        const Eigen::VectorXd& zstar = reps.front();
        const double probeDist = std::max(0.05 * (1.0 + scale), 10.0 * sep);
        std::vector<Eigen::VectorXd> dirs;
        for (int i = 0; i < space.dim; ++i) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(space.dim);
            e[i] = 1.0;
            dirs.push_back(e);
            dirs.push_back(-e);
        }
        for (int k = 0; k < opts.nDirections; ++k) dirs.push_back(rng.unitVector(space.dim));
        for (const auto& u : dirs) {
            Eigen::VectorXd q;
            try {
                q = projectFeasible(space, x, y, zstar + probeDist * u);
            } catch (const std::exception&) {
                continue;
            }
            if ((q - zstar).norm() <= sep) continue;
            if (upperBoundResidual(space, x, y, q) > opts.tolPrimal * (1.0 + q.norm())) continue;
            if (sigmaDistanceSum(x, y, q, space.norm) <= bestSigma + flatSigmaTol) {
                reps.push_back(q);
                break;
            }
        }
    }

    double bestResidual = 0.0;
    for (const auto* r : good)
        if (r->sigma <= bestSigma + flatSigmaTol) bestResidual = std::max(bestResidual, r->residual);

    if (reps.size() >= 2) {
        std::sort(reps.begin(), reps.end(),
                  [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return lexLess(a, b); });
        result.z = reps.front();
        result.witnesses = reps;
        result.status = SolveStatus::FlatMinimum;
    } else {
        result.z = reps.front();
        result.status = SolveStatus::Unique;
    }
    result.sigmaValue = sigmaDistanceSum(x, y, result.z, space.norm);
    result.feasibilityResidual = bestResidual;
    double gap = 0.0;
    for (const auto* r : good) gap = std::max(gap, std::abs(r->sigma - bestSigma));
    result.optimalityGapEstimate = gap;
    result.iterations = iterations;
    return result;
}

MinimalityResult isMinimalUpperBound(const OrderedSpace& space, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                                     double tol, const SolverOptions& opts) {
    const double scale = 1.0 + std::max(space.normOf(z - x), space.normOf(z - y));
    if (upperBoundResidual(space, x, y, z) > tol * scale + 1e-7)
        throw std::invalid_argument("isMinimalUpperBound: z is not an upper bound of {x, y}");

    // slack set D = C cap ((z-x) - C) cap ((z-y) - C); z is minimal iff D = {0}
    auto maximize = [&](const Eigen::VectorXd& u) {
        std::vector<prox::Term> terms;
        terms.push_back(prox::Linear{-u});
        terms.push_back(prox::TranslatedCone{Eigen::VectorXd::Zero(space.dim), +1.0, space.cone});
        terms.push_back(prox::TranslatedCone{z - x, -1.0, space.cone});
        terms.push_back(prox::TranslatedCone{z - y, -1.0, space.cone});
        ConsensusOptions copts;
        copts.gamma = opts.gamma;
        copts.relaxation = opts.relaxation;
        copts.maxIter = opts.maxIter;
        copts.tolPrimal = opts.tolPrimal;
        copts.tolObjective = opts.tolObjective;
        return consensusSolve(terms, Eigen::VectorXd::Zero(space.dim), copts);
    };

    // project a probe output back onto D so the reported witness is feasible
    auto polish = [&](const Eigen::VectorXd& d) {
        std::vector<std::function<Eigen::VectorXd(const Eigen::VectorXd&)>> projs;
        projs.push_back(
            [&](const Eigen::VectorXd& u) -> Eigen::VectorXd { return space.cone.project(u); });
        projs.push_back([&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
            return (z - x) - space.cone.project((z - x) - u);
        });
        projs.push_back([&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
            return (z - y) - space.cone.project((z - y) - u);
        });
        return dykstraProject(d, projs, 1e-11);
    };

    std::vector<Eigen::VectorXd> dirs;
    for (int i = 0; i < space.dim; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(space.dim);
        e[i] = 1.0;
        dirs.push_back(e);
        dirs.push_back(-e);
    }
    Rng rng(opts.seed);
    for (int k = 0; k < opts.nDirections; ++k) dirs.push_back(rng.unitVector(space.dim));

    MinimalityResult res;
    for (const auto& u : dirs) {
        ConsensusResult cr = maximize(u);
        Eigen::VectorXd d;
        try {
            d = polish(cr.point);
        } catch (const std::exception&) {
            continue;
        }
        double advance = u.dot(d);
        res.maxAdvance = std::max(res.maxAdvance, advance);
        if (advance > tol * scale && d.norm() > tol * scale) {
            res.minimal = false;
            res.witness = d;
            return res;
        }
    }
    return res;
}

QuasiSupResult bruteForceQuasiSup(const OrderedSpace& space, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y, const GridSpec& grid) {
    const int n = space.dim;
    if (n > 4) throw std::invalid_argument("brute-force oracle supports dim <= 4 only");
    const double scale = space.normOf(x - y);
    Eigen::VectorXd lo(n), hi(n);
    if (grid.lower && grid.upper) {
        lo = *grid.lower;
        hi = *grid.upper;
    } else {
        for (int i = 0; i < n; ++i) {
            lo[i] = std::min(x[i], y[i]) - 1.0;
            hi[i] = std::max(x[i], y[i]) + scale + 1.0;
        }
    }
    const double flatTol = grid.flatTol > 0.0 ? grid.flatTol : 1e-9 * (1.0 + scale);
    const double memberTol = ConeSpec::kDefaultMembershipTol;

    struct ScanResult {
        double bestSigma = std::numeric_limits<double>::infinity();
        Eigen::VectorXd best;
        std::vector<std::pair<double, Eigen::VectorXd>> near;
    };

    // per-axis sample values: uniform grid plus the coordinates of x and y,
    // so axis-aligned active constraints are sampled exactly
    auto axisValues = [&](double l, double h, int points, double xi, double yi) {
        std::vector<double> vals;
        vals.reserve(static_cast<std::size_t>(points) + 2);
        double step = (h - l) / static_cast<double>(points - 1);
        for (int k = 0; k < points; ++k) vals.push_back(l + step * k);
        for (double c : {xi, yi})
            if (c > l && c < h) vals.push_back(c);
        std::sort(vals.begin(), vals.end());
        return vals;
    };

    auto scan = [&](const Eigen::VectorXd& l, const Eigen::VectorXd& h, int points,
                    bool collectNear) {
        ScanResult s;
        std::vector<std::vector<double>> axes;
        for (int i = 0; i < n; ++i) axes.push_back(axisValues(l[i], h[i], points, x[i], y[i]));
        std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
        Eigen::VectorXd p(n);
        while (true) {
            for (int i = 0; i < n; ++i)
                p[i] = axes[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
            if (space.cone.residual(p - x) <= memberTol &&
                space.cone.residual(p - y) <= memberTol) {
                double sg = sigmaDistanceSum(x, y, p, space.norm);
                if (sg < s.bestSigma) {
                    s.bestSigma = sg;
                    s.best = p;
                }
                if (collectNear && sg < s.bestSigma + 10.0 * flatTol) s.near.push_back({sg, p});
            }
            int d = 0;
            while (d < n && ++idx[static_cast<std::size_t>(d)] ==
                                axes[static_cast<std::size_t>(d)].size()) {
                idx[static_cast<std::size_t>(d)] = 0;
                ++d;
            }
            if (d == n) break;
        }
        return s;
    };

    ScanResult coarse = scan(lo, hi, grid.pointsPerAxis, true);
    QuasiSupResult result;
    if (!std::isfinite(coarse.bestSigma)) {
        result.status = SolveStatus::Infeasible;
        result.z = Eigen::VectorXd::Zero(n);
        result.sigmaValue = std::numeric_limits<double>::quiet_NaN();
        return result;
    }

    // flat detection on the coarse grid
    const double sep = SolverOptions{}.sepTolFor(scale);
    std::vector<Eigen::VectorXd> reps;
    for (const auto& [sg, p] : coarse.near) {
        if (sg > coarse.bestSigma + flatTol) continue;
        bool fresh = true;
        for (const auto& rep : reps) fresh = fresh && ((rep - p).norm() > sep);
        if (fresh) reps.push_back(p);
    }

    if (reps.size() >= 2) {
        std::sort(reps.begin(), reps.end(),
                  [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return lexLess(a, b); });
        result.z = reps.front();
        result.witnesses = reps;
        result.status = SolveStatus::FlatMinimum;
        result.sigmaValue = sigmaDistanceSum(x, y, result.z, space.norm);
        result.feasibilityResidual =
            std::max(0.0, upperBoundResidual(space, x, y, result.z));
        return result;
    }

    // unique-looking: refine locally (sigma is convex, so the basin is right);
    // shrink the box only when the incumbent stays interior, otherwise
    // re-center and keep the scale so the minimizer cannot escape the box
    Eigen::VectorXd best = coarse.best;
    Eigen::VectorXd step = (hi - lo) / static_cast<double>(grid.pointsPerAxis - 1);
    int shrinks = 0;
    for (int round = 0; round < 8 * grid.refineRounds && shrinks < grid.refineRounds; ++round) {
        Eigen::VectorXd l = best - 2.0 * step, h = best + 2.0 * step;
        ScanResult fine = scan(l, h, 41, false);
        if (std::isfinite(fine.bestSigma) && fine.bestSigma <= coarse.bestSigma) {
            best = fine.best;
            coarse.bestSigma = fine.bestSigma;
        }
        Eigen::VectorXd fineStep = (h - l) / 40.0;
        bool onEdge = false;
        for (int i = 0; i < n; ++i)
            onEdge = onEdge || best[i] < l[i] + 0.51 * fineStep[i] ||
                     best[i] > h[i] - 0.51 * fineStep[i];
        if (!onEdge) {
            step = fineStep;
            ++shrinks;
        }
    }

    result.z = best;
    result.status = SolveStatus::Unique;
    result.sigmaValue = coarse.bestSigma;
    result.feasibilityResidual = std::max(0.0, upperBoundResidual(space, x, y, best));
    return result;
}

}  // namespace conelat
