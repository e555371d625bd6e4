#include "conelat/splitting.hpp"

#include <cmath>
#include <stdexcept>

namespace conelat {

Eigen::VectorXd projectLpBall(const Eigen::VectorXd& u, double radius, double p) {
    if (radius <= 0.0) return Eigen::VectorXd::Zero(u.size());
    if (lpNorm(u, p) <= radius) return u;
    if (p == 2.0) return u * (radius / u.norm());
    if (p == 1.0) return projectL1Ball(u, radius);
    if (std::isinf(p)) return u.cwiseMax(-radius).cwiseMin(radius);
    // KKT: y_i + beta*y_i^(p-1)*sign = u_i with ||y||_p = r; ||y(beta)||_p is
    // decreasing in beta, so bisect
    auto radii = [&](double beta) {
        Eigen::VectorXd y(u.size());
        for (int i = 0; i < u.size(); ++i) {
            double b = std::abs(u[i]);
            double lo = 0.0, hi = b;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                ((mid + beta * std::pow(mid, p - 1.0) < b) ? lo : hi) = mid;
            }
            double r = 0.5 * (lo + hi);
            y[i] = u[i] >= 0 ? r : -r;
        }
        return y;
    };
    double lo = 0.0, hi = 1.0;
    while (lpNorm(radii(hi), p) > radius && hi < 1e14) hi *= 2.0;
    for (int it = 0; it < 90; ++it) {
        double mid = 0.5 * (lo + hi);
        (lpNorm(radii(mid), p) > radius ? lo : hi) = mid;
    }
    return radii(0.5 * (lo + hi));
}

namespace prox {

Eigen::VectorXd applyProx(const Term& term, const Eigen::VectorXd& u, double gamma) {
    if (const auto* nd = std::get_if<NormDistance>(&term))
        return nd->center + normProx(u - nd->center, gamma * nd->weight, nd->p);
    if (const auto* li = std::get_if<Linear>(&term)) return u - gamma * li->g;
    if (const auto* tc = std::get_if<TranslatedCone>(&term))
        return tc->base + tc->sign * tc->cone.project(tc->sign * (u - tc->base));
    const auto& ball = std::get<LpBall>(term);
    return ball.center + projectLpBall(u - ball.center, ball.radius, ball.p);
}

bool isIndicator(const Term& term) {
    return std::holds_alternative<TranslatedCone>(term) || std::holds_alternative<LpBall>(term);
}

double indicatorResidual(const Term& term, const Eigen::VectorXd& z) {
    if (const auto* tc = std::get_if<TranslatedCone>(&term))
        return std::max(0.0, tc->cone.residual(tc->sign * (z - tc->base)));
    if (const auto* ball = std::get_if<LpBall>(&term))
        return std::max(0.0, lpNorm(z - ball->center, ball->p) - ball->radius);
    return 0.0;
}

double smoothValue(const Term& term, const Eigen::VectorXd& z) {
    if (const auto* nd = std::get_if<NormDistance>(&term))
        return nd->weight * lpNorm(z - nd->center, nd->p);
    if (const auto* li = std::get_if<Linear>(&term)) return li->g.dot(z);
    return 0.0;
}

}  // namespace prox

ConsensusResult consensusSolve(const std::vector<prox::Term>& terms, const Eigen::VectorXd& start,
                               const ConsensusOptions& options) {
    const int m = static_cast<int>(terms.size());
    if (m < 2) throw std::invalid_argument("consensus splitting needs at least two terms");
    const int n = static_cast<int>(start.size());

    std::vector<Eigen::VectorXd> w(static_cast<std::size_t>(m), start);
    Eigen::VectorXd zbar = start;

    auto evalObjective = [&](const Eigen::VectorXd& z) {
        double v = 0.0;
        for (const auto& t : terms) v += prox::smoothValue(t, z);
        return v;
    };
    auto evalResidual = [&](const Eigen::VectorXd& z) {
        double r = 0.0;
        for (const auto& t : terms) r = std::max(r, prox::indicatorResidual(t, z));
        return r;
    };

    double lastObj = evalObjective(zbar);
    ConsensusResult res;
    Eigen::VectorXd y(n);
    for (int iter = 1; iter <= options.maxIter; ++iter) {
        zbar.setZero();
        for (const auto& wi : w) zbar += wi;
        zbar /= static_cast<double>(m);
        // fixed-point residual: at a solution every prox output equals the
        // consensus point
        double move = 0.0;
        for (int i = 0; i < m; ++i) {
            y = prox::applyProx(terms[static_cast<std::size_t>(i)],
                                2.0 * zbar - w[static_cast<std::size_t>(i)], options.gamma);
            move = std::max(move, (y - zbar).norm());
            w[static_cast<std::size_t>(i)] += options.relaxation * (y - zbar);
        }
        if (iter % options.checkEvery == 0 || iter == options.maxIter) {
            double scale = 1.0 + zbar.norm();
            if (move < options.tolPrimal * scale) {
                double obj = evalObjective(zbar);
                double r = evalResidual(zbar);
                if (r < options.tolPrimal * scale &&
                    std::abs(obj - lastObj) < options.tolObjective * scale) {
                    res.point = zbar;
                    res.objective = obj;
                    res.residual = r;
                    res.iterations = iter;
                    res.converged = true;
                    return res;
                }
                lastObj = obj;
            } else {
                lastObj = evalObjective(zbar);
            }
        }
    }
    res.point = zbar;
    res.objective = evalObjective(zbar);
    res.residual = evalResidual(zbar);
    res.iterations = options.maxIter;
    res.converged = false;
    return res;
}

FeasibilityResult averagedProjectionFeasibility(const std::vector<prox::Term>& indicatorTerms,
                                                const Eigen::VectorXd& start, double tol,
                                                int maxIter) {
    Eigen::VectorXd z = start;
    const double scale = 1.0 + start.norm();
    FeasibilityResult out;
    for (int iter = 1; iter <= maxIter; ++iter) {
        Eigen::VectorXd next = Eigen::VectorXd::Zero(z.size());
        for (const auto& t : indicatorTerms) next += prox::applyProx(t, z, 1.0);
        next /= static_cast<double>(indicatorTerms.size());
        double move = (next - z).norm();
        z = next;
        out.iterations = iter;
        if (move <= tol * scale) break;
    }
    out.point = z;
    double md = 0.0;
    for (const auto& t : indicatorTerms)
        md = std::max(md, (prox::applyProx(t, z, 1.0) - z).norm());
    out.maxDistance = md;
    return out;
}

}  // namespace conelat
