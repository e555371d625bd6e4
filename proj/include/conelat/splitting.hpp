#pragma once

#include <Eigen/Core>
#include <optional>
#include <variant>
#include <vector>

#include "conelat/cones.hpp"
#include "conelat/norms.hpp"

namespace conelat {

// Proximable building blocks for the consensus splitting solver. Every
// objective we solve is a sum of these.
namespace prox {

// weight * ||z - center||_p
struct NormDistance {
    Eigen::VectorXd center;
    double p = 2.0;
    double weight = 1.0;
};

// <g | z>
struct Linear {
    Eigen::VectorXd g;
};

// indicator of {z : sign*(z - base) in cone}
struct TranslatedCone {
    Eigen::VectorXd base;
    double sign = 1.0;  // +1: base + C, -1: base - C
    ConeSpec cone;
};

// indicator of the lp ball {z : ||z - center||_p <= radius}
struct LpBall {
    Eigen::VectorXd center;
    double radius = 1.0;
    double p = 2.0;
};

using Term = std::variant<NormDistance, Linear, TranslatedCone, LpBall>;

Eigen::VectorXd applyProx(const Term& term, const Eigen::VectorXd& u, double gamma);
bool isIndicator(const Term& term);
// violation of an indicator term at z (0 for smooth terms)
double indicatorResidual(const Term& term, const Eigen::VectorXd& z);
// value of the smooth part (indicator terms contribute 0)
double smoothValue(const Term& term, const Eigen::VectorXd& z);

}  // namespace prox

// projection onto the lp ball of radius r (any p in [1, inf])
Eigen::VectorXd projectLpBall(const Eigen::VectorXd& u, double radius, double p);

struct ConsensusOptions {
    double gamma = 1.0;        // prox step
    double relaxation = 1.8;   // over-relaxation factor in (0, 2)
    int maxIter = 100000;
    double tolPrimal = 1e-8;   // max indicator violation at the consensus point
    double tolObjective = 1e-10;  // objective change between checks
    int checkEvery = 10;
};

struct ConsensusResult {
    Eigen::VectorXd point;
    double objective = 0.0;   // sum of smooth terms at `point`
    double residual = 0.0;    // max indicator violation at `point`
    int iterations = 0;
    bool converged = false;
};

// Consensus Douglas-Rachford over the given terms: minimizes
// sum_i f_i(z) by splitting into the product space with the diagonal
// constraint. Requires at least two terms.
ConsensusResult consensusSolve(const std::vector<prox::Term>& terms, const Eigen::VectorXd& start,
                               const ConsensusOptions& options);

struct FeasibilityResult {
    Eigen::VectorXd point;
    double maxDistance = 0.0;
    int iterations = 0;
};

// Averaged projections onto an intersection; converges to a point minimizing
// the sum of squared set distances, so maxDistance ~ 0 iff the sets intersect.
FeasibilityResult averagedProjectionFeasibility(const std::vector<prox::Term>& indicatorTerms,
                                                const Eigen::VectorXd& start, double tol = 1e-11,
                                                int maxIter = 20000);

}  // namespace conelat
