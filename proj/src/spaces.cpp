#include "conelat/spaces.hpp"

#include <cmath>

namespace conelat {

OrderedSpace OrderedSpace::make(ConeSpec cone, NormSpec norm, std::optional<bool> monotoneHint) {
    OrderedSpace s;
    s.dim = cone.dim();
    s.cone = std::move(cone);
    s.norm = norm;
    s.proper = s.cone.isProper();
    s.generating = s.cone.isGenerating();
    s.monotoneHint = monotoneHint;
    return s;
}

OrderedSpace OrderedSpace::standardRn(int n, double p) {
    // the standard cone is a lattice cone and every lp norm is monotone on it
    return make(ConeSpec::standard(n), NormSpec::lp(p), true);
}

OrderedSpace OrderedSpace::lorentzRn(int n) {
    Eigen::VectorXd axis = Eigen::VectorXd::Zero(n);
    axis[0] = 1.0;
    return make(ConeSpec::lorentz(axis), NormSpec::l2(), true);
}

OrderedSpace OrderedSpace::halfLorentzR3() {
    Eigen::VectorXd axis = Eigen::VectorXd::Zero(3), h = Eigen::VectorXd::Zero(3);
    axis[0] = 1.0;
    h[1] = 1.0;
    // sub-cone of the Lorentz cone, so the l2 order is still monotone
    return make(ConeSpec::halfLorentz(axis, h), NormSpec::l2(), true);
}

OrderedSpace OrderedSpace::fourRayR3Linf() {
    Eigen::MatrixXd G(4, 3);
    G << 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1;
    Eigen::MatrixXd none;
    return make(ConeSpec::polyhedral(3, G, none), NormSpec::linf());
}

OrderedSpace OrderedSpace::polyNonnegR3(int gridPoints) {
    // not monotone: 0 <= (0,-1,1) <= (0,0,1) while sqrt(2) > 1
    return make(ConeSpec::polyNonneg(gridPoints), NormSpec::l2(), false);
}

OrderedSpace OrderedSpace::weightedL2Cone(int n) {
    Eigen::VectorXd w(n - 1);
    for (int m = 2; m <= n; ++m) w[m - 2] = 1.0 / std::sqrt(static_cast<double>(m));
    // not alpha-normal for any alpha, so in particular not monotone
    return make(ConeSpec::weightedLorentz(w), NormSpec::l2(), false);
}

OrderedSpace OrderedSpace::dualSpace() const {
    return make(cone.dual(), NormSpec::lp(norm.dualExponent()));
}

bool orderLeq(const OrderedSpace& space, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
              double tol) {
    return space.cone.contains(y - x, tol);
}

Eigen::VectorXd upperBoundAny(const OrderedSpace& space, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y) {
    return x + space.cone.upperBoundShift(y - x);
}

}  // namespace conelat
