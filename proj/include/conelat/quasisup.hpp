#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conelat/spaces.hpp"
#include "conelat/splitting.hpp"

namespace conelat {

struct SolverOptions {
    double tolPrimal = 1e-8;
    double tolObjective = 1e-10;
    int maxIter = 100000;
    int nRestarts = 8;
    std::uint64_t seed = 0;
    // flat-minimum separation; <= 0 means the scale-relative default
    // 1e-4 * (1 + ||x - y||)
    double sepTol = 0.0;
    double gamma = 1.0;
    double relaxation = 1.8;
    int nDirections = 8;        // random directions for the minimality probe
    bool forceGeneralPath = false;  // skip closed forms (used to cross-check them)

    double sepTolFor(double scale) const {
        return sepTol > 0.0 ? sepTol : 1e-4 * (1.0 + scale);
    }
};

enum class SolveStatus { Unique, FlatMinimum, Infeasible, MaxIter };

std::string statusString(SolveStatus s);

struct QuasiSupResult {
    Eigen::VectorXd z;
    double sigmaValue = 0.0;
    SolveStatus status = SolveStatus::Infeasible;
    double feasibilityResidual = 0.0;
    double optimalityGapEstimate = 0.0;
    std::vector<Eigen::VectorXd> witnesses;  // >= 2 distinct points when flat
    int iterations = 0;

    bool ok() const { return status == SolveStatus::Unique || status == SolveStatus::FlatMinimum; }
};

// distance sum ||z - x||_p + ||z - y||_p
double sigmaDistanceSum(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& z, const NormSpec& norm);

// quasi-absolute value in an l2 Lorentz space, by reduction to the 2-plane
// spanned by the axis and the argument
Eigen::VectorXd lorentzAbs(const Eigen::VectorXd& w, const Eigen::VectorXd& axis);

// The quasi-supremum of {x, y}: the minimizer of the distance sum over the
// intersection of the two translated cones. Closed forms for l2 Lorentz
// cones (2-plane reduction) and lattice cones with strictly convex norms;
// everything else runs through consensus splitting with a restart-based
// uniqueness audit and a flatness probe.
QuasiSupResult quasiSup(const OrderedSpace& space, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y, const SolverOptions& opts = {});

struct MinimalityResult {
    bool minimal = true;
    std::optional<Eigen::VectorXd> witness;  // nonzero slack direction if not minimal
    double maxAdvance = 0.0;                 // largest <u, d> found over the slack set
};

// Tests whether z is a minimal upper bound of {x, y}: the slack set
// D = {d in C : z - x - d in C, z - y - d in C} must contain only 0. Probes D
// by maximizing <u, d> over a panel of directions with the splitting solver.
MinimalityResult isMinimalUpperBound(const OrderedSpace& space, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                                     double tol = 1e-6, const SolverOptions& opts = {});

struct GridSpec {
    int pointsPerAxis = 81;
    std::optional<Eigen::VectorXd> lower;  // auto bounds when absent
    std::optional<Eigen::VectorXd> upper;
    int refineRounds = 5;   // local refinement around the incumbent (skipped when flat)
    double flatTol = 0.0;   // <= 0: max(1e-9, 1e-9*(1+scale))
};

// Exhaustive oracle: evaluates sigma on a feasibility-filtered grid. Intended
// for dim <= 4 as an independent check of the solver.
QuasiSupResult bruteForceQuasiSup(const OrderedSpace& space, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y, const GridSpec& grid = {});

}  // namespace conelat
