#pragma once

#include <Eigen/Core>
#include <limits>

namespace conelat {

// lp norm descriptor, p in [1, inf]. p = infinity encoded as
// std::numeric_limits<double>::infinity().
struct NormSpec {
    double p = 2.0;

    static NormSpec l1() { return {1.0}; }
    static NormSpec l2() { return {2.0}; }
    static NormSpec linf() { return {std::numeric_limits<double>::infinity()}; }
    static NormSpec lp(double p) { return {p}; }

    bool isInf() const { return std::isinf(p); }
    bool strictlyConvex() const { return p > 1.0 && !isInf(); }
    bool smooth() const { return p > 1.0 && !isInf(); }

    // conjugate exponent: 1/p + 1/q = 1
    double dualExponent() const {
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        if (isInf()) return 1.0;
        return p / (p - 1.0);
    }

    double value(const Eigen::VectorXd& x) const;
};

double lpNorm(const Eigen::VectorXd& x, double p);

// prox of w -> gamma * ||w||_p at point u, i.e.
//   argmin_w  gamma*||w||_p + (1/2)||w - u||_2^2.
// l1/l2/linf have closed forms; other p solved by nested bisection on the
// stationarity condition.
Eigen::VectorXd normProx(const Eigen::VectorXd& u, double gamma, double p);

// Euclidean projection onto the l1 ball of given radius.
Eigen::VectorXd projectL1Ball(const Eigen::VectorXd& u, double radius);

}  // namespace conelat
