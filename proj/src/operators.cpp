#include "conelat/operators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace conelat {

OperatorMatrix makeOperator(Eigen::MatrixXd mat, OrderedSpace domain, OrderedSpace codomain) {
    if (mat.rows() != codomain.dim || mat.cols() != domain.dim)
        throw std::invalid_argument("operator shape does not match the spaces");
    return {std::move(mat), std::move(domain), std::move(codomain)};
}

OperatorMatrix rankOne(const Eigen::VectorXd& f, const Eigen::VectorXd& y,
                       const OrderedSpace& domain, const OrderedSpace& codomain) {
    if (f.size() != domain.dim || y.size() != codomain.dim)
        throw std::invalid_argument("rankOne: dimension mismatch");
    return {y * f.transpose(), domain, codomain};
}

OperatorNormEstimate operatorNorm(const OperatorMatrix& T, int nSamples, std::uint64_t seed) {
    OperatorNormEstimate est;
    const Eigen::MatrixXd& A = T.mat;
    if (T.domain.norm.p == 2.0 && T.codomain.norm.p == 2.0) {
        Eigen::MatrixXd G = A.transpose() * A;
        Eigen::VectorXd v = Eigen::VectorXd::Ones(A.cols());
        v[0] += 0.5;  // break symmetric starts
        v.normalize();
        double lam = 0.0;
        for (int it = 0; it < 20000; ++it) {
            Eigen::VectorXd w = G * v;
            double nw = w.norm();
            if (nw < 1e-300) break;  // zero matrix
            w /= nw;
            double lamNew = w.dot(G * w);
            if (std::abs(lamNew - lam) <= 1e-12 * std::max(1.0, lamNew) && it > 4) {
                lam = lamNew;
                break;
            }
            lam = lamNew;
            v = w;
        }
        est.value = std::sqrt(std::max(0.0, lam));
        est.exact = true;
        return est;
    }
    // lower bound for general lp -> lq: sampled directions plus hill climbing
    Rng rng(seed);
    double best = 0.0;
    Eigen::VectorXd bestX;
    for (int i = 0; i < nSamples; ++i) {
        Eigen::VectorXd x = rng.gaussianVector(T.domain.dim);
        double nx = T.domain.normOf(x);
        if (nx < 1e-12) continue;
        x /= nx;
        double v = T.codomain.normOf(A * x);
        if (v > best) {
            best = v;
            bestX = x;
        }
    }
    if (bestX.size() > 0) {
        double step = 0.5;
        for (int it = 0; it < 200; ++it) {
            Eigen::VectorXd cand = bestX + step * rng.gaussianVector(T.domain.dim);
            cand /= T.domain.normOf(cand);
            double v = T.codomain.normOf(A * cand);
            if (v > best) {
                best = v;
                bestX = cand;
            } else {
                step *= 0.9;
            }
        }
    }
    est.value = best;
    est.exact = false;
    return est;
}

namespace {

// extreme-direction sample of the domain cone boundary: axis + unit vector of
// the orthogonal complement (weighted cones scale by the weights)
Eigen::VectorXd boundaryRay(const ConeSpec& cone, Rng& rng) {
    const int n = cone.dim();
    switch (cone.kind()) {
        case ConeSpec::Kind::Lorentz:
        case ConeSpec::Kind::HalfLorentz: {
            Eigen::VectorXd g = rng.gaussianVector(n);
            Eigen::VectorXd u = g - cone.axis().dot(g) * cone.axis();
            if (u.norm() < 1e-12) u = -cone.axis();
            u.normalize();
            Eigen::VectorXd r = cone.axis() + u;
            if (cone.kind() == ConeSpec::Kind::HalfLorentz &&
                cone.halfspaceNormal().dot(r) < 0.0)
                r -= 2.0 * cone.halfspaceNormal().dot(r) * cone.halfspaceNormal();
            return r / std::sqrt(2.0);
        }
        case ConeSpec::Kind::WeightedLorentz: {
            Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
            double s2 = 0.0;
            for (int i = 1; i < n; ++i) {
                u[i] = rng.gaussian();
                double t = cone.weights()[i - 1] * u[i];
                s2 += t * t;
            }
            u /= std::sqrt(s2);
            u[0] = 1.0;
            return u.normalized();
        }
        default:
            return cone.sampleMember(rng).normalized();
    }
}

}  // namespace

PositivityReport operatorPositive(const OperatorMatrix& T, double tol, int nRays,
                                  std::uint64_t seed) {
    PositivityReport rep;
    rep.worstViolation = -std::numeric_limits<double>::infinity();
    const ConeSpec& dom = T.domain.cone;
    const ConeSpec& cod = T.codomain.cone;
    auto violation = [&](const Eigen::VectorXd& ray) {
        return cod.residual(T.mat * ray);
    };

    if (dom.kind() == ConeSpec::Kind::Standard || dom.kind() == ConeSpec::Kind::Polyhedral) {
        // positivity is equivalent to every generator mapping into the cone
        Eigen::MatrixXd G;
        if (dom.kind() == ConeSpec::Kind::Standard)
            G = Eigen::MatrixXd::Identity(dom.dim(), dom.dim());
        else
            G = dom.generators();
        if (G.rows() == 0) throw std::runtime_error("positivity check needs generators");
        rep.exact = true;
        for (int i = 0; i < G.rows(); ++i) {
            double v = violation(G.row(i).transpose());
            ++rep.raysTested;
            if (v > rep.worstViolation) {
                rep.worstViolation = v;
                if (v > tol) rep.witnessRay = G.row(i).transpose();
            }
        }
        rep.positive = rep.worstViolation <= tol;
        return rep;
    }

    // sampled extreme rays with local hill-climb refinement; the violation is
    // convex and homogeneous, so its max over the unit cone section sits on an
    // extreme ray
    Rng rng(seed);
    Eigen::VectorXd worstRay;
    for (int i = 0; i < nRays; ++i) {
        Eigen::VectorXd r = boundaryRay(dom, rng);
        double v = violation(r);
        ++rep.raysTested;
        if (v > rep.worstViolation) {
            rep.worstViolation = v;
            worstRay = r;
        }
    }
    double step = 0.5;
    double cur = rep.worstViolation;
    for (int it = 0; it < 120; ++it) {
        // perturb within the boundary sphere
        Eigen::VectorXd cand = worstRay + step * rng.gaussianVector(dom.dim());
        const Eigen::VectorXd& v = dom.axis().size() > 0 ? dom.axis() : worstRay;
        if (dom.kind() == ConeSpec::Kind::Lorentz || dom.kind() == ConeSpec::Kind::HalfLorentz) {
            Eigen::VectorXd u = cand - v.dot(cand) * v;
            if (u.norm() < 1e-12) continue;
            u.normalize();
            cand = (v + u) / std::sqrt(2.0);
            if (dom.kind() == ConeSpec::Kind::HalfLorentz && dom.halfspaceNormal().dot(cand) < 0.0)
                cand -= 2.0 * dom.halfspaceNormal().dot(cand) * dom.halfspaceNormal();
        } else {
            cand = dom.project(cand);
            double nc = cand.norm();
            if (nc < 1e-12) {
                step *= 0.7;
                continue;
            }
            cand /= nc;
        }
        double val = violation(cand);
        if (val > cur) {
            cur = val;
            worstRay = cand;
        } else {
            step *= 0.9;
        }
    }
    rep.worstViolation = std::max(rep.worstViolation, cur);
    rep.positive = rep.worstViolation <= tol;
    if (!rep.positive) rep.witnessRay = worstRay;
    return rep;
}

double robinsonNorm(const OperatorMatrix& T, int nSamples, int refineIters, std::uint64_t seed) {
    Rng rng(seed);
    const ConeSpec& cone = T.domain.cone;
    auto value = [&](const Eigen::VectorXd& x) { return T.codomain.normOf(T.mat * x); };
    auto normalizeInCone = [&](Eigen::VectorXd x) -> std::optional<Eigen::VectorXd> {
        x = cone.project(x);
        double n = T.domain.normOf(x);
        if (n < 1e-12) return std::nullopt;
        return Eigen::VectorXd(x / n);
    };

    double best = 0.0;
    Eigen::VectorXd bestX;
    for (int i = 0; i < nSamples; ++i) {
        auto xo = normalizeInCone(cone.sampleMember(rng));
        if (!xo) continue;
        double v = value(*xo);
        if (v > best || bestX.size() == 0) {
            best = v;
            bestX = *xo;
        }
    }
    if (bestX.size() == 0) throw std::runtime_error("robinsonNorm: degenerate cone");

    // projected gradient ascent on ||Tx||_2 with step halving; for other
    // codomain exponents fall back to random hill climbing
    const bool l2cod = T.codomain.norm.p == 2.0;
    double step = 0.5;
    for (int it = 0; it < refineIters; ++it) {
        Eigen::VectorXd dir;
        if (l2cod) {
            Eigen::VectorXd tx = T.mat * bestX;
            double ntx = tx.norm();
            dir = ntx > 1e-14 ? Eigen::VectorXd(T.mat.transpose() * tx / ntx)
                              : Eigen::VectorXd(rng.gaussianVector(T.domain.dim));
        } else {
            dir = rng.gaussianVector(T.domain.dim);
        }
        auto cand = normalizeInCone(bestX + step * dir);
        if (cand) {
            double v = value(*cand);
            if (v > best) {
                best = v;
                bestX = *cand;
                continue;
            }
        }
        step *= 0.5;
    }
    return best;
}

OperatorNormReport positivelyAttainedCheck(const OperatorMatrix& T, double tol, int nSamples,
                                           int refineIters, std::uint64_t seed) {
    PositivityReport pos = operatorPositive(T, 1e-7, 200, seed);
    if (!pos.positive) throw std::invalid_argument("positivelyAttainedCheck: operator not positive");
    OperatorNormReport rep;
    rep.opNorm = operatorNorm(T).value;
    rep.robinsonNormLb = robinsonNorm(T, nSamples, refineIters, seed);
    rep.positivelyAttainedGap = rep.opNorm - rep.robinsonNormLb;
    rep.nRays = nSamples;
    rep.refinementIters = refineIters;
    rep.pass = rep.positivelyAttainedGap <= tol;
    return rep;
}

OperatorMatrix samplePositiveOperator(const OrderedSpace& X, const OrderedSpace& Y, Rng& rng) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(Y.dim, X.dim);
    ConeSpec dualX = X.cone.dual();
    int terms = 1 + rng.uniformInt(3);
    for (int k = 0; k < terms; ++k) {
        Eigen::VectorXd f = dualX.sampleMember(rng);
        Eigen::VectorXd y = Y.cone.sampleMember(rng);
        M += rng.uniform(0.2, 1.0) * (y * f.transpose());
    }
    const bool bothLorentz =
        X.cone.kind() == ConeSpec::Kind::Lorentz && Y.cone.kind() == ConeSpec::Kind::Lorentz;
    if (bothLorentz && X.dim == Y.dim && rng.uniform() < 0.6) {
        // lambda * (v_Y v_X^T + R) with R an isometry between the axis
        // complements maps the cone into the cone
        const int n = X.dim;
        Eigen::MatrixXd B(n, n - 1), C(n, n - 1);
        // orthonormal bases of the complements via Householder QR
        auto basis = [&](const Eigen::VectorXd& v) {
            Eigen::MatrixXd A(n, n);
            A.col(0) = v;
            for (int j = 1; j < n; ++j) A.col(j) = rng.gaussianVector(n);
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
            Eigen::MatrixXd Q = qr.householderQ();
            if (Q.col(0).dot(v) < 0) Q = -Q;
            return Eigen::MatrixXd(Q.rightCols(n - 1));
        };
        B = basis(X.cone.axis());
        C = basis(Y.cone.axis());
        Eigen::MatrixXd Rsmall(n - 1, n - 1);
        for (int j = 0; j < n - 1; ++j) Rsmall.col(j) = rng.gaussianVector(n - 1);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Rsmall);
        Eigen::MatrixXd Q = qr.householderQ();
        double lam = rng.uniform(0.2, 1.5);
        M += lam * (Y.cone.axis() * X.cone.axis().transpose() + C * Q * B.transpose());
    }
    return {M, X, Y};
}

namespace {

// Y_+ = {0} makes every order check on B(X, Y) vacuous
bool degenerateCone(const ConeSpec& c) {
    return c.kind() == ConeSpec::Kind::Polyhedral &&
           (c.generators().size() == 0 || c.generators().cwiseAbs().maxCoeff() < 1e-12);
}

}  // namespace

OperatorExperimentReport absoluteMonotonicityExperiment(const OrderedSpace& X,
                                                        const OrderedSpace& Y, int nTrials,
                                                        std::uint64_t seed, double bound,
                                                        double tol) {
    OperatorExperimentReport rep;
    rep.bound = bound;
    Rng rng(seed);
    if (degenerateCone(Y.cone)) {
        rep.vacuous = true;  // Y_+ = {0}: every operator is both <= and >= 0
        rep.pass = true;
        return rep;
    }
    for (int t = 0; t < nTrials; ++t) {
        OperatorMatrix A = samplePositiveOperator(X, Y, rng);
        OperatorMatrix B = samplePositiveOperator(X, Y, rng);
        if (t % 16 == 0) B.mat.setZero();  // boundary case T = S
        Eigen::MatrixXd Tm = 0.5 * (A.mat - B.mat);
        Eigen::MatrixXd Sm = 0.5 * (A.mat + B.mat);
        double nS = operatorNorm({Sm, X, Y}).value;
        if (nS < 1e-12) continue;
        double nT = operatorNorm({Tm, X, Y}).value;
        ++rep.trials;
        double ratio = nT / nS;
        rep.maxRatio = std::max(rep.maxRatio, ratio);
        if (nT > bound * nS + tol) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

OperatorExperimentReport normalityTransferCheck(const OrderedSpace& X, const OrderedSpace& Y,
                                                Flavor kind, double alpha, double beta,
                                                int nTrials, std::uint64_t seed, double tol) {
    OperatorExperimentReport rep;
    rep.bound = alpha * beta;
    Rng rng(seed);
    if (degenerateCone(Y.cone)) {
        rep.vacuous = true;
        rep.pass = true;
        return rep;
    }
    for (int t = 0; t < nTrials; ++t) {
        OperatorMatrix A = samplePositiveOperator(X, Y, rng);
        OperatorMatrix B = samplePositiveOperator(X, Y, rng);
        double nT = 0.0, denom = 0.0;
        switch (kind) {
            case Flavor::Normal: {
                // 0 <= T <= S with T = A, S = A + B
                nT = operatorNorm(A).value;
                denom = operatorNorm({A.mat + B.mat, X, Y}).value;
                break;
            }
            case Flavor::AbsNormal: {
                Eigen::MatrixXd Tm = 0.5 * (A.mat - B.mat);
                Eigen::MatrixXd Sm = 0.5 * (A.mat + B.mat);
                nT = operatorNorm({Tm, X, Y}).value;
                denom = operatorNorm({Sm, X, Y}).value;
                break;
            }
            case Flavor::MaxNormal:
            case Flavor::SumNormal: {
                // U <= T <= V with U arbitrary, T = U + A, V = T + B
                Eigen::MatrixXd U(Y.dim, X.dim);
                for (int j = 0; j < U.cols(); ++j) U.col(j) = rng.gaussianVector(Y.dim);
                Eigen::MatrixXd Tm = U + A.mat;
                Eigen::MatrixXd Vm = Tm + B.mat;
                nT = operatorNorm({Tm, X, Y}).value;
                double nU = operatorNorm({U, X, Y}).value;
                double nV = operatorNorm({Vm, X, Y}).value;
                denom = kind == Flavor::MaxNormal ? std::max(nU, nV) : nU + nV;
                break;
            }
            default:
                throw std::invalid_argument("normalityTransferCheck needs a normality flavor");
        }
        if (denom < 1e-12) continue;
        ++rep.trials;
        rep.maxRatio = std::max(rep.maxRatio, nT / denom);
        if (nT > rep.bound * denom + tol) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

}  // namespace conelat
