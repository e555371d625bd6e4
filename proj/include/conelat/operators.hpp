#pragma once

#include <optional>
#include <string>

#include "conelat/order_metrics.hpp"
#include "conelat/spaces.hpp"

namespace conelat {

// dense linear map between two ordered spaces
struct OperatorMatrix {
    Eigen::MatrixXd mat;  // codomain.dim x domain.dim
    OrderedSpace domain;
    OrderedSpace codomain;

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return mat * x; }
};

OperatorMatrix makeOperator(Eigen::MatrixXd mat, OrderedSpace domain, OrderedSpace codomain);

// rank-one operator x -> f(x) y; norm is dual-norm(f) * norm(y)
OperatorMatrix rankOne(const Eigen::VectorXd& f, const Eigen::VectorXd& y,
                       const OrderedSpace& domain, const OrderedSpace& codomain);

struct OperatorNormEstimate {
    double value = 0.0;
    bool exact = false;  // true for the l2->l2 spectral norm
};

// l2->l2: spectral norm via power iteration (relative 1e-10); other exponent
// pairs: sampled + ascent lower bound, flagged as such
OperatorNormEstimate operatorNorm(const OperatorMatrix& T, int nSamples = 200,
                                  std::uint64_t seed = 0);

struct PositivityReport {
    bool positive = true;
    bool exact = false;  // true when the domain cone is polyhedral (generator check)
    std::optional<Eigen::VectorXd> witnessRay;
    double worstViolation = 0.0;
    int raysTested = 0;
};

// Does T map the domain cone into the codomain cone? Exact on polyhedral
// domains; sampled extreme rays plus hill-climbing refinement otherwise.
PositivityReport operatorPositive(const OperatorMatrix& T, double tol = 1e-9, int nRays = 200,
                                  std::uint64_t seed = 0);

// sup ||Tx|| over unit cone vectors, lower bound by sampling + projected ascent
double robinsonNorm(const OperatorMatrix& T, int nSamples = 500, int refineIters = 50,
                    std::uint64_t seed = 0);

struct OperatorNormReport {
    double opNorm = 0.0;
    double robinsonNormLb = 0.0;
    double positivelyAttainedGap = 0.0;
    int nRays = 0;
    int refinementIters = 0;
    bool pass = false;
};

// gap = ||T|| - ||T||_+ (one-sided: the Robinson norm is a sampled lower
// bound). Throws if T is not positive.
OperatorNormReport positivelyAttainedCheck(const OperatorMatrix& T, double tol = 1e-4,
                                           int nSamples = 500, int refineIters = 50,
                                           std::uint64_t seed = 0);

// random positive operator built from positive rank-ones and, for matching
// Lorentz pairs, axis-fixing isometries of the orthogonal complement
OperatorMatrix samplePositiveOperator(const OrderedSpace& X, const OrderedSpace& Y, Rng& rng);

struct OperatorExperimentReport {
    double maxRatio = 0.0;
    double bound = 1.0;  // alpha*beta
    int trials = 0;
    int violations = 0;
    bool vacuous = false;
    bool pass = false;
};

// samples +-T <= S pairs via T = (A-B)/2, S = (A+B)/2 with A, B positive and
// checks ||T|| <= bound * ||S|| + tol
OperatorExperimentReport absoluteMonotonicityExperiment(const OrderedSpace& X,
                                                        const OrderedSpace& Y, int nTrials,
                                                        std::uint64_t seed, double bound = 1.0,
                                                        double tol = 1e-6);

// transferred normality of B(X, Y) for the given flavor at constant
// alpha*beta, on operator samples whose order preconditions hold exactly
OperatorExperimentReport normalityTransferCheck(const OrderedSpace& X, const OrderedSpace& Y,
                                                Flavor kind, double alpha, double beta,
                                                int nTrials, std::uint64_t seed,
                                                double tol = 1e-6);

}  // namespace conelat
