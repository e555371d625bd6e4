#pragma once

#include <optional>

#include "conelat/cones.hpp"
#include "conelat/norms.hpp"

namespace conelat {

// A finite-dimensional pre-ordered Banach space: R^dim with an lp norm and a
// closed cone inducing the order x <= y iff y - x in cone. Immutable after
// construction; all operations on it are pure.
struct OrderedSpace {
    int dim = 0;
    ConeSpec cone = ConeSpec::standard(1);
    NormSpec norm = NormSpec::l2();
    bool proper = true;
    bool generating = true;
    std::optional<bool> monotoneHint;

    bool strictlyConvex() const { return norm.strictlyConvex(); }
    bool smooth() const { return norm.smooth(); }

    double normOf(const Eigen::VectorXd& x) const { return norm.value(x); }

    static OrderedSpace make(ConeSpec cone, NormSpec norm,
                             std::optional<bool> monotoneHint = std::nullopt);

    // the paper's recurring example spaces
    static OrderedSpace standardRn(int n, double p = 2.0);
    static OrderedSpace lorentzRn(int n);                 // l2, axis e1
    static OrderedSpace halfLorentzR3();                  // l2, axis e1, half-space e2
    static OrderedSpace fourRayR3Linf();                  // rays (+-1, +-1, 1), linf
    static OrderedSpace polyNonnegR3(int gridPoints = 257);
    static OrderedSpace weightedL2Cone(int n);            // truncation of the weighted-l2 cone

    // dual space: same coordinates, conjugate exponent, dual cone
    OrderedSpace dualSpace() const;
};

// x <= y in the order of `space`, within absolute tolerance on the cone
// inequalities
bool orderLeq(const OrderedSpace& space, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
              double tol = ConeSpec::kDefaultMembershipTol);

// some z with x <= z and y <= z; throws if the cone cannot produce one
Eigen::VectorXd upperBoundAny(const OrderedSpace& space, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y);

}  // namespace conelat
