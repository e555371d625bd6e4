#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conelat/quasisup.hpp"

namespace conelat {

enum class Flavor {
    MaxNormal,
    SumNormal,
    AbsNormal,
    Normal,
    SumConormal,
    MaxConormal,
    AbsConormal,
    Conormal,
};

bool isNormality(Flavor f);
Flavor dualFlavor(Flavor f);  // the paired flavor under norm/cone duality
std::string flavorString(Flavor f);
std::optional<Flavor> flavorFromString(const std::string& s);  // kebab-case

struct PropertyFlavor {
    Flavor kind = Flavor::Normal;
    double alpha = 1.0;
    bool approximate = false;  // conormal flavors only; numerically identical
};

// an order-constrained sample: pair (x, y) for the two-point flavors or a
// triple z <= x <= y for max/sum normality
struct OrderSample {
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    std::optional<Eigen::VectorXd> z;
};

enum class Verdict { HoldsOnSample, CounterexampleFound };

struct NormalityReport {
    PropertyFlavor flavor;
    Verdict verdict = Verdict::HoldsOnSample;
    std::optional<OrderSample> witness;
    double alphaLowerBound = 0.0;  // worst ||x|| / denom ratio seen
    int qualifying = 0;            // samples that satisfied the order precondition
};

// Samples with the order preconditions holding by construction
// (z = x - c1, y = x + c2 with cone members c1, c2).
std::vector<OrderSample> makeOrderSamples(const OrderedSpace& space, Flavor kind, int n,
                                          std::uint64_t seed);

// Evaluates the flavor inequality on every qualifying sample. Throws if the
// flavor is not a normality flavor or no sample qualifies.
NormalityReport normalityCheck(const OrderedSpace& space, const PropertyFlavor& flavor,
                               const std::vector<OrderSample>& samples, double tol = 1e-9);

// re-evaluates the flavor ratio on one sample (witness re-verification)
double normalityRatio(const OrderedSpace& space, Flavor kind, const OrderSample& s);

struct ConormalDecomposition {
    Eigen::VectorXd a;
    std::optional<Eigen::VectorXd> b;  // second summand where the flavor has one
    double ratio = 0.0;                // achieved objective / ||x||
    bool feasible = true;
};

// Solves the flavor's convex decomposition program for one x.
ConormalDecomposition conormalitySolve(const OrderedSpace& space, Flavor kind,
                                       const Eigen::VectorXd& x, double tol = 1e-8,
                                       const SolverOptions& opts = {});

// max achieved ratio over sampled unit vectors: a lower bound for the best
// conormality constant
double conormalityConstantEstimate(const OrderedSpace& space, Flavor kind, int nSamples,
                                   std::uint64_t seed, const SolverOptions& opts = {});

struct RegularityRecord {
    std::string name;
    bool holds = false;
    double normalityRatio = 0.0;    // worst sampled normality ratio
    double conormalityRatio = 0.0;  // estimated conormality constant (lower bound)
};

struct RegularityReport {
    double alpha = 1.0;
    std::vector<RegularityRecord> records;
};

RegularityReport regularityClassify(const OrderedSpace& space, double alpha, int nSamples,
                                    std::uint64_t seed, const SolverOptions& opts = {});

struct DualSpotcheckReport {
    PropertyFlavor primalFlavor;
    Flavor pairedFlavor = Flavor::Conormal;
    bool primalHolds = false;
    bool dualHolds = false;
    bool agree = false;
    double primalRatio = 0.0;
    double dualRatio = 0.0;
};

// Checks the flavor on the space and the paired flavor on the dual space
// (same coordinates, conjugate exponent, dual cone).
DualSpotcheckReport dualNormalitySpotcheck(const OrderedSpace& space, const PropertyFlavor& flavor,
                                           int nSamples, std::uint64_t seed = 0,
                                           const SolverOptions& opts = {});

}  // namespace conelat
