#pragma once

#include "conelat/quasisup.hpp"

namespace conelat {

struct AndoDecomposition {
    Eigen::VectorXd pos;
    Eigen::VectorXd neg;
    double ratio = 0.0;  // max(||x+||, ||x-||) / ||x||, 0 for x = 0
};

struct IdentityRecord {
    std::string name;
    double maxViolation = 0.0;
    bool pass = false;
};

struct IdentityReport {
    std::vector<IdentityRecord> records;
    bool applicable = true;  // false when some quasi-sup came back non-unique
    bool pass = false;       // all records pass (meaningless when not applicable)
    std::string note;
};

// x ~and~ y = -((-x) ~or~ (-y))
QuasiSupResult quasiInf(const OrderedSpace& space, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y, const SolverOptions& opts = {});

// quasi-absolute value (-x) ~or~ x
QuasiSupResult quasiAbs(const OrderedSpace& space, const Eigen::VectorXd& x,
                        const SolverOptions& opts = {});

// x+ = 0 ~or~ x, x- = 0 ~or~ (-x)
QuasiSupResult posPart(const OrderedSpace& space, const Eigen::VectorXd& x,
                       const SolverOptions& opts = {});
QuasiSupResult negPart(const OrderedSpace& space, const Eigen::VectorXd& x,
                       const SolverOptions& opts = {});

AndoDecomposition andoDecompose(const OrderedSpace& space, const Eigen::VectorXd& x,
                                const SolverOptions& opts = {});

// Evaluates the eleven elementary quasi-lattice identities plus the triangle
// and reverse-triangle order inequalities on one input triple. Equality
// identities are measured in the space norm, order inequalities by cone
// membership residual.
IdentityReport identitySuite(const OrderedSpace& space, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y, const Eigen::VectorXd& z, double tol = 1e-6,
                             const SolverOptions& opts = {});

}  // namespace conelat
