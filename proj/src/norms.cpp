#include "conelat/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace conelat {

double lpNorm(const Eigen::VectorXd& x, double p) {
    if (std::isinf(p)) return x.lpNorm<Eigen::Infinity>();
    if (p == 1.0) return x.lpNorm<1>();
    if (p == 2.0) return x.norm();
    // scale for overflow safety, as in the BLAS nrm2 idiom
    double m = x.lpNorm<Eigen::Infinity>();
    if (m == 0.0) return 0.0;
    double acc = 0.0;
    for (int i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]) / m, p);
    return m * std::pow(acc, 1.0 / p);
}

double NormSpec::value(const Eigen::VectorXd& x) const { return lpNorm(x, p); }

Eigen::VectorXd projectL1Ball(const Eigen::VectorXd& u, double radius) {
    if (radius <= 0.0) return Eigen::VectorXd::Zero(u.size());
    if (u.lpNorm<1>() <= radius) return u;
    // sort |u| descending and find the soft-threshold level
    std::vector<double> a(u.size());
    for (int i = 0; i < u.size(); ++i) a[i] = std::abs(u[i]);
    std::sort(a.begin(), a.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        cum += a[k];
        double t = (cum - radius) / static_cast<double>(k + 1);
        if (k + 1 == a.size() || a[k + 1] <= t) {
            theta = t;
            break;
        }
    }
    Eigen::VectorXd w(u.size());
    for (int i = 0; i < u.size(); ++i) {
        double m = std::abs(u[i]) - theta;
        w[i] = m > 0.0 ? (u[i] > 0 ? m : -m) : 0.0;
    }
    return w;
}

namespace {

// solve r + c*r^(p-1) = b for r in [0, b], monotone in r
double solveRadial(double c, double p, double b) {
    if (b <= 0.0) return 0.0;
    double lo = 0.0, hi = b;
    for (int it = 0; it < 90; ++it) {
        double mid = 0.5 * (lo + hi);
        double f = mid + c * std::pow(mid, p - 1.0) - b;
        (f < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// generic-p prox: parametrize by s = ||w||_p^(p-1); for fixed s each
// coordinate solves r_i + (gamma/s) r_i^(p-1) = |u_i|, then s must match
// ||w(s)||_p^(p-1). The mismatch is positive for small s iff ||u||_q > gamma,
// and eventually negative, so plain bisection applies.
Eigen::VectorXd proxGenericP(const Eigen::VectorXd& u, double gamma, double p) {
    double q = p / (p - 1.0);
    if (lpNorm(u, q) <= gamma) return Eigen::VectorXd::Zero(u.size());

    auto radiiFor = [&](double s) {
        Eigen::VectorXd w(u.size());
        double coef = gamma / s;
        for (int i = 0; i < u.size(); ++i) {
            double r = solveRadial(coef, p, std::abs(u[i]));
            w[i] = u[i] >= 0 ? r : -r;
        }
        return w;
    };

    double sHi = std::pow(lpNorm(u, p), p - 1.0);
    double sLo = sHi * 1e-18;
    for (int it = 0; it < 80; ++it) {
        double s = 0.5 * (sLo + sHi);
        double g = std::pow(lpNorm(radiiFor(s), p), p - 1.0) - s;
        (g > 0.0 ? sLo : sHi) = s;
    }
    return radiiFor(0.5 * (sLo + sHi));
}

}  // namespace

Eigen::VectorXd normProx(const Eigen::VectorXd& u, double gamma, double p) {
    if (gamma <= 0.0) return u;
    if (p == 2.0) {
        double n = u.norm();
        if (n <= gamma) return Eigen::VectorXd::Zero(u.size());
        return u * (1.0 - gamma / n);
    }
    if (p == 1.0) {
        Eigen::VectorXd w(u.size());
        for (int i = 0; i < u.size(); ++i) {
            double m = std::abs(u[i]) - gamma;
            w[i] = m > 0.0 ? (u[i] > 0 ? m : -m) : 0.0;
        }
        return w;
    }
    if (std::isinf(p)) {
        // Moreau: prox of the linf norm = identity minus projection onto
        // the scaled l1 ball (its dual unit ball)
        return u - projectL1Ball(u, gamma);
    }
    return proxGenericP(u, gamma, p);
}

}  // namespace conelat
