#include "conelat/cones.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace conelat {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd lorentzProjectImpl(const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    double s = v.dot(x);
    Eigen::VectorXd w = x - s * v;
    double nw = w.norm();
    if (s >= nw) return x;
    if (-s >= nw) return Eigen::VectorXd::Zero(x.size());
    double lam = 0.5 * (s + nw);
    return lam * v + (lam / nw) * w;
}

// min over the grid of the quadratic a t^2 + b t + c; the grid is sorted and
// covers [0,1], so the minimum sits at an endpoint or at a grid neighbor of
// the vertex.
double gridQuadMin(const Eigen::VectorXd& grid, double a, double b, double c) {
    auto eval = [&](double t) { return (a * t + b) * t + c; };
    double m = std::min(eval(grid[0]), eval(grid[grid.size() - 1]));
    if (a > 0.0) {
        double tv = -b / (2.0 * a);
        if (tv > 0.0 && tv < 1.0) {
            const double* lo = std::lower_bound(grid.data(), grid.data() + grid.size(), tv);
            if (lo > grid.data()) m = std::min(m, eval(*(lo - 1)));
            if (lo < grid.data() + grid.size()) m = std::min(m, eval(*lo));
        }
    }
    return m;
}

double gridQuadMax(const Eigen::VectorXd& grid, double a, double b, double c) {
    return -gridQuadMin(grid, -a, -b, -c);
}

bool nearlyParallel(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::abs(std::abs(a.dot(b)) - 1.0) < 1e-9;
}

// enumerate (n-1)-subsets of the rows of M and collect unit null directions
// that see every row of `test` on one side; used for both directions of the
// generator/half-space swap
Eigen::MatrixXd subsetNullDirections(const Eigen::MatrixXd& M, const Eigen::MatrixXd& test,
                                     int n) {
    std::vector<Eigen::VectorXd> found;
    const int m = static_cast<int>(M.rows());
    std::vector<int> idx(n - 1);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n - 1) {
            Eigen::MatrixXd S(n - 1, n);
            for (int i = 0; i < n - 1; ++i) S.row(i) = M.row(idx[i]);
            Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
            lu.setThreshold(1e-10);
            if (lu.rank() != n - 1) return;
            Eigen::MatrixXd K = lu.kernel();
            Eigen::VectorXd nu = K.col(0).normalized();
            Eigen::VectorXd prods = test * nu;
            const double eps = 1e-10;
            bool allPos = (prods.array() >= -eps).all();
            bool allNeg = (prods.array() <= eps).all();
            Eigen::VectorXd keep;
            if (allPos && !allNeg)
                keep = nu;
            else if (allNeg && !allPos)
                keep = -nu;
            else if (allPos && allNeg)
                return;  // everything in the hyperplane, degenerate
            else
                return;
            for (const auto& f : found)
                if (nearlyParallel(f, keep)) return;
            found.push_back(keep);
            return;
        }
        for (int i = start; i <= m - (n - 1 - depth); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (n == 1) {
        // cones in R^1: rays and inward normals coincide
        for (int i = 0; i < m; ++i) {
            Eigen::VectorXd nu = M.row(i).transpose().normalized();
            bool dup = false;
            for (const auto& f : found) dup = dup || nearlyParallel(f, nu);
            if (!dup) found.push_back(nu);
        }
    } else {
        rec(0, 0);
    }
    Eigen::MatrixXd out(static_cast<int>(found.size()), n);
    for (int i = 0; i < out.rows(); ++i) out.row(i) = found[static_cast<std::size_t>(i)];
    return out;
}

}  // namespace

Eigen::VectorXd chebyshevGrid01(int n) {
    if (n < 2) throw std::invalid_argument("polynomial grid needs at least 2 points");
    Eigen::VectorXd g(n);
    for (int k = 0; k < n; ++k)
        g[n - 1 - k] = 0.5 * (1.0 + std::cos(kPi * static_cast<double>(k) / (n - 1)));
    g[0] = 0.0;
    g[n - 1] = 1.0;
    return g;
}

ConeSpec ConeSpec::standard(int n) {
    if (n < 1) throw std::invalid_argument("standard cone needs dim >= 1");
    ConeSpec c;
    c.kind_ = Kind::Standard;
    c.dim_ = n;
    return c;
}

ConeSpec ConeSpec::lorentz(const Eigen::VectorXd& axis) {
    double na = axis.norm();
    if (na < 1e-14) throw std::invalid_argument("Lorentz axis must be nonzero");
    ConeSpec c;
    c.kind_ = Kind::Lorentz;
    c.dim_ = static_cast<int>(axis.size());
    c.axis_ = axis / na;
    return c;
}

ConeSpec ConeSpec::halfLorentz(const Eigen::VectorXd& axis, const Eigen::VectorXd& halfspace) {
    ConeSpec c = lorentz(axis);
    if (halfspace.size() != axis.size())
        throw std::invalid_argument("half-space normal dimension mismatch");
    double nh = halfspace.norm();
    if (nh < 1e-14) throw std::invalid_argument("half-space normal must be nonzero");
    Eigen::VectorXd h = halfspace / nh;
    if (std::abs(h.dot(c.axis_)) > 1e-9)
        throw std::invalid_argument("half-space normal must be orthogonal to the axis");
    c.kind_ = Kind::HalfLorentz;
    c.half_ = h;
    return c;
}

ConeSpec ConeSpec::polyhedral(int dim, const Eigen::MatrixXd& generators,
                              const Eigen::MatrixXd& halfspaces) {
    if (dim < 1) throw std::invalid_argument("polyhedral cone needs dim >= 1");
    if (generators.size() > 0 && generators.cols() != dim)
        throw std::invalid_argument("generator dimension mismatch");
    if (halfspaces.size() > 0 && halfspaces.cols() != dim)
        throw std::invalid_argument("half-space dimension mismatch");
    if (generators.size() == 0 && halfspaces.size() == 0)
        throw std::invalid_argument("polyhedral cone needs generators or half-spaces");
    ConeSpec c;
    c.kind_ = Kind::Polyhedral;
    c.dim_ = dim;
    c.generators_ = generators;
    for (int i = 0; i < c.generators_.rows(); ++i) {
        double n = c.generators_.row(i).norm();
        if (n > 1e-14) c.generators_.row(i) /= n;
    }
    c.halfspaces_ = halfspaces;
    for (int i = 0; i < c.halfspaces_.rows(); ++i) {
        double n = c.halfspaces_.row(i).norm();
        if (n > 1e-14) c.halfspaces_.row(i) /= n;
    }
    // derive the missing representation by brute-force facet/ray enumeration;
    // only feasible for the small dimensions the examples live in
    const bool enumerable = dim <= 4;
    if (c.halfspaces_.size() == 0 && enumerable && c.generators_.rows() <= 300) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(c.generators_);
        lu.setThreshold(1e-10);
        if (lu.rank() == dim)
            c.halfspaces_ = subsetNullDirections(c.generators_, c.generators_, dim);
    }
    if (c.generators_.size() == 0 && enumerable && c.halfspaces_.rows() <= 300) {
        Eigen::MatrixXd cand = subsetNullDirections(c.halfspaces_, c.halfspaces_, dim);
        // a null direction of (n-1) normals is a ray only if it satisfies all
        // the remaining inequalities
        std::vector<int> keep;
        for (int i = 0; i < cand.rows(); ++i)
            if ((c.halfspaces_ * cand.row(i).transpose()).minCoeff() >= -1e-10)
                keep.push_back(i);
        Eigen::MatrixXd G(static_cast<int>(keep.size()), dim);
        for (std::size_t i = 0; i < keep.size(); ++i) G.row(static_cast<int>(i)) = cand.row(keep[i]);
        c.generators_ = G;
    }
    return c;
}

ConeSpec ConeSpec::polyNonneg(int gridPoints) {
    ConeSpec c;
    c.kind_ = Kind::PolyNonneg;
    c.dim_ = 3;
    c.grid_ = chebyshevGrid01(gridPoints);
    return c;
}

ConeSpec ConeSpec::weightedLorentz(const Eigen::VectorXd& weights) {
    if (weights.size() < 1) throw std::invalid_argument("weighted cone needs dim >= 2");
    if ((weights.array() <= 0.0).any())
        throw std::invalid_argument("weighted cone weights must be positive");
    ConeSpec c;
    c.kind_ = Kind::WeightedLorentz;
    c.dim_ = static_cast<int>(weights.size()) + 1;
    c.weights_ = weights;
    return c;
}

std::string ConeSpec::kindName() const {
    switch (kind_) {
        case Kind::Standard: return "standard";
        case Kind::Lorentz: return "lorentz";
        case Kind::HalfLorentz: return "half_lorentz";
        case Kind::Polyhedral: return "polyhedral";
        case Kind::PolyNonneg: return "polynonneg";
        case Kind::WeightedLorentz: return "weighted_lorentz";
    }
    return "?";
}

double ConeSpec::residual(const Eigen::VectorXd& x) const {
    checkDim(x);
    switch (kind_) {
        case Kind::Standard:
            return -x.minCoeff();
        case Kind::Lorentz: {
            double s = axis_.dot(x);
            return (x - s * axis_).norm() - s;
        }
        case Kind::HalfLorentz: {
            double s = axis_.dot(x);
            return std::max((x - s * axis_).norm() - s, -half_.dot(x));
        }
        case Kind::Polyhedral: {
            if (halfspaces_.rows() > 0) return -(halfspaces_ * x).minCoeff();
            // generator-only representation: distance to the cone
            return (x - project(x)).norm();
        }
        case Kind::PolyNonneg:
            return -gridQuadMin(grid_, x[0], x[1], x[2]);
        case Kind::WeightedLorentz: {
            double acc = 0.0;
            for (int i = 1; i < dim_; ++i) {
                double t = weights_[i - 1] * x[i];
                acc += t * t;
            }
            return std::sqrt(acc) - x[0];
        }
    }
    return 0.0;
}

Eigen::VectorXd ConeSpec::project(const Eigen::VectorXd& x) const {
    checkDim(x);
    switch (kind_) {
        case Kind::Standard:
            return x.cwiseMax(0.0);
        case Kind::Lorentz:
            return lorentzProjectImpl(x, axis_);
        case Kind::HalfLorentz: {
            if (residual(x) <= 0.0) return x;
            Eigen::VectorXd zl = lorentzProjectImpl(x, axis_);
            if (half_.dot(zl) >= 0.0) return zl;
            // the half-space is active: drop the h-component and project in
            // the subspace, where the cone is again a Lorentz cone
            return lorentzProjectImpl(x - half_.dot(x) * half_, axis_);
        }
        case Kind::Polyhedral: {
            if (generators_.rows() > 0) {
                Eigen::MatrixXd A = generators_.transpose();
                return A * nnls(A, x);
            }
            // Moreau: project -x onto the dual cone spanned by the normals
            Eigen::MatrixXd A = halfspaces_.transpose();
            return x + A * nnls(A, -x);
        }
        case Kind::PolyNonneg: {
            if (residual(x) <= 0.0) return x;
            // dual cone is generated by the moment vectors (t^2, t, 1)
            Eigen::MatrixXd A(3, grid_.size());
            for (int j = 0; j < grid_.size(); ++j) {
                double t = grid_[j];
                A(0, j) = t * t;
                A(1, j) = t;
                A(2, j) = 1.0;
            }
            return x + A * nnls(A, -x);
        }
        case Kind::WeightedLorentz: {
            const int n = dim_;
            double wn = 0.0, wninv = 0.0;
            for (int i = 1; i < n; ++i) {
                double t = weights_[i - 1] * x[i];
                wn += t * t;
                t = x[i] / weights_[i - 1];
                wninv += t * t;
            }
            wn = std::sqrt(wn);
            wninv = std::sqrt(wninv);
            if (x[0] >= wn) return x;
            if (x[0] <= -wninv) return Eigen::VectorXd::Zero(n);
            // boundary case: z_i = x_i / (1 + mu w_i^2), z_1 = x_1 / (1 - mu),
            // bisect for the multiplier mu that puts z on the cone surface
            auto surf = [&](double mu) {
                double s2 = 0.0;
                for (int i = 1; i < n; ++i) {
                    double wi = weights_[i - 1];
                    double t = wi * x[i] / (1.0 + mu * wi * wi);
                    s2 += t * t;
                }
                return s2;
            };
            double mu, s;
            if (std::abs(x[0]) < 1e-300) {
                mu = 1.0;
                s = std::sqrt(surf(1.0));
            } else if (x[0] > 0.0) {
                double lo = 0.0, hi = 1.0;
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (lo + hi);
                    double f = surf(mid) - (x[0] / (1.0 - mid)) * (x[0] / (1.0 - mid));
                    (f > 0.0 ? lo : hi) = mid;
                }
                mu = 0.5 * (lo + hi);
                s = x[0] / (1.0 - mu);
            } else {
                double lo = 1.0, hi = 2.0;
                while (surf(hi) - (x[0] / (1.0 - hi)) * (x[0] / (1.0 - hi)) < 0.0 && hi < 1e12)
                    hi *= 2.0;
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (lo + hi);
                    double f = surf(mid) - (x[0] / (1.0 - mid)) * (x[0] / (1.0 - mid));
                    (f < 0.0 ? lo : hi) = mid;
                }
                mu = 0.5 * (lo + hi);
                s = x[0] / (1.0 - mu);
            }
            Eigen::VectorXd z(n);
            z[0] = s;
            for (int i = 1; i < n; ++i) {
                double wi = weights_[i - 1];
                z[i] = x[i] / (1.0 + mu * wi * wi);
            }
            return z;
        }
    }
    return x;
}

ConeSpec ConeSpec::dual() const {
    switch (kind_) {
        case Kind::Standard:
        case Kind::Lorentz:
            return *this;  // self-dual under the l2 pairing
        case Kind::Polyhedral: {
            if (generators_.rows() == 0 || halfspaces_.rows() == 0)
                throw std::runtime_error(
                    "polyhedral dual needs both representations (cone not completed)");
            return polyhedral(dim_, halfspaces_, generators_);
        }
        case Kind::PolyNonneg: {
            Eigen::MatrixXd G(grid_.size(), 3);
            for (int j = 0; j < grid_.size(); ++j) {
                double t = grid_[j];
                G(j, 0) = t * t;
                G(j, 1) = t;
                G(j, 2) = 1.0;
            }
            Eigen::MatrixXd none;
            return polyhedral(3, G, none);
        }
        case Kind::WeightedLorentz:
            return weightedLorentz(weights_.cwiseInverse());
        case Kind::HalfLorentz:
            throw std::runtime_error("dual cone unsupported for half-Lorentz cones");
    }
    throw std::runtime_error("unreachable");
}

Eigen::VectorXd ConeSpec::upperBoundShift(const Eigen::VectorXd& d) const {
    checkDim(d);
    switch (kind_) {
        case Kind::Standard:
            return d.cwiseMax(0.0);
        case Kind::Lorentz: {
            double s = axis_.dot(d);
            double lam = std::max(0.0, s + (d - s * axis_).norm());
            return lam * axis_;
        }
        case Kind::HalfLorentz: {
            double mu = std::max(0.0, half_.dot(d));
            double s = axis_.dot(d);
            double pd = (d - s * axis_).norm();
            double lam = std::max(mu, s + mu + pd);
            return lam * axis_ + mu * half_;
        }
        case Kind::WeightedLorentz: {
            double acc = 0.0;
            for (int i = 1; i < dim_; ++i) {
                double t = weights_[i - 1] * d[i];
                acc += t * t;
            }
            double lam = std::max(0.0, d[0] + std::sqrt(acc));
            Eigen::VectorXd u = Eigen::VectorXd::Zero(dim_);
            u[0] = lam;
            return u;
        }
        case Kind::PolyNonneg: {
            double tau = std::max(0.0, gridQuadMax(grid_, d[0], d[1], d[2]));
            Eigen::VectorXd u = Eigen::VectorXd::Zero(3);
            u[2] = tau;
            return u;
        }
        case Kind::Polyhedral: {
            if (!isGenerating()) throw std::runtime_error("polyhedral cone is not generating");
            Eigen::VectorXd s = Eigen::VectorXd::Zero(dim_);
            for (int i = 0; i < generators_.rows(); ++i) s += generators_.row(i).transpose();
            double tau = 1.0 + d.norm();
            for (int it = 0; it < 80; ++it) {
                Eigen::VectorXd u = tau * s;
                if (contains(u - d, 1e-12 * (1.0 + d.norm()))) return u;
                tau *= 2.0;
            }
            throw std::runtime_error("failed to majorize vector in polyhedral cone");
        }
    }
    throw std::runtime_error("unreachable");
}

Eigen::VectorXd ConeSpec::sampleMember(Rng& rng, double scale) const {
    switch (kind_) {
        case Kind::Standard: {
            Eigen::VectorXd x(dim_);
            for (int i = 0; i < dim_; ++i) x[i] = std::abs(rng.gaussian()) * scale;
            return x;
        }
        case Kind::Lorentz:
        case Kind::HalfLorentz: {
            Eigen::VectorXd g = rng.gaussianVector(dim_);
            Eigen::VectorXd u = g - axis_.dot(g) * axis_;
            double nu = u.norm();
            if (nu < 1e-12) u = Eigen::VectorXd::Zero(dim_);
            else u /= nu;
            double t = scale * (0.1 + std::abs(rng.gaussian()));
            double rho = rng.uniform() < 0.25 ? 1.0 : rng.uniform();
            Eigen::VectorXd x = t * axis_ + rho * t * u;
            if (kind_ == Kind::HalfLorentz && half_.dot(x) < 0.0)
                x -= 2.0 * half_.dot(x) * half_;  // reflect across h-perp, stays in the cone
            return x;
        }
        case Kind::WeightedLorentz: {
            Eigen::VectorXd u = Eigen::VectorXd::Zero(dim_);
            double s2 = 0.0;
            for (int i = 1; i < dim_; ++i) {
                u[i] = rng.gaussian();
                double t = weights_[i - 1] * u[i];
                s2 += t * t;
            }
            double s = std::sqrt(s2);
            if (s > 1e-12) u /= s;
            double t = scale * (0.1 + std::abs(rng.gaussian()));
            double rho = rng.uniform() < 0.25 ? 1.0 : rng.uniform();
            Eigen::VectorXd x = rho * t * u;
            x[0] = t;
            return x;
        }
        case Kind::Polyhedral: {
            if (generators_.rows() == 0)
                throw std::runtime_error("cannot sample: no generator representation");
            Eigen::VectorXd x = Eigen::VectorXd::Zero(dim_);
            if (rng.uniform() < 0.2) {
                // pure extreme ray
                int i = rng.uniformInt(static_cast<int>(generators_.rows()));
                return scale * (0.1 + std::abs(rng.gaussian())) * generators_.row(i).transpose();
            }
            for (int i = 0; i < generators_.rows(); ++i)
                x += std::abs(rng.gaussian()) * scale * generators_.row(i).transpose();
            return x;
        }
        case Kind::PolyNonneg: {
            // squares (t-r)^2, the hump t(1-t) and the constant generate the cone
            double r = rng.uniform(-1.0, 2.0);
            double l1 = std::abs(rng.gaussian()) * scale;
            double l2 = std::abs(rng.gaussian()) * scale;
            double l3 = std::abs(rng.gaussian()) * scale;
            if (rng.uniform() < 0.3) l3 = 0.0;
            if (rng.uniform() < 0.3) l2 = 0.0;
            Eigen::VectorXd x(3);
            x[0] = l1 - l2;
            x[1] = -2.0 * l1 * r + l2;
            x[2] = l1 * r * r + l3;
            return x;
        }
    }
    throw std::runtime_error("unreachable");
}

bool ConeSpec::isProper() const {
    switch (kind_) {
        case Kind::Standard:
        case Kind::Lorentz:
        case Kind::HalfLorentz:
        case Kind::WeightedLorentz:
        case Kind::PolyNonneg:
            return true;
        case Kind::Polyhedral: {
            if (generators_.rows() == 0) {
                // only half-spaces known: proper iff the normals span R^n
                Eigen::FullPivLU<Eigen::MatrixXd> lu(halfspaces_);
                lu.setThreshold(1e-10);
                return lu.rank() == dim_;
            }
            // pointed iff 0 is not a convex combination of the unit generators
            Eigen::MatrixXd A(dim_ + 1, generators_.rows());
            A.topRows(dim_) = generators_.transpose();
            A.row(dim_).setOnes();
            Eigen::VectorXd b = Eigen::VectorXd::Zero(dim_ + 1);
            b[dim_] = 1.0;
            Eigen::VectorXd lam = nnls(A, b);
            return (A * lam - b).norm() > 1e-8;
        }
    }
    return true;
}

bool ConeSpec::isGenerating() const {
    switch (kind_) {
        case Kind::Standard:
        case Kind::Lorentz:
        case Kind::HalfLorentz:
        case Kind::WeightedLorentz:
        case Kind::PolyNonneg:
            return true;
        case Kind::Polyhedral: {
            if (generators_.rows() == 0) return false;
            Eigen::FullPivLU<Eigen::MatrixXd> lu(generators_);
            lu.setThreshold(1e-10);
            return lu.rank() == dim_;
        }
    }
    return true;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int maxIter) {
    const int m = static_cast<int>(A.cols());
    if (maxIter <= 0) maxIter = 3 * std::max(m, 16);
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(m);
    std::vector<bool> passive(static_cast<std::size_t>(m), false);
    const double tol = 1e-12 * (1.0 + b.norm()) * (1.0 + A.cwiseAbs().maxCoeff());

    auto solvePassive = [&](Eigen::VectorXd& s) {
        std::vector<int> idx;
        for (int i = 0; i < m; ++i)
            if (passive[static_cast<std::size_t>(i)]) idx.push_back(i);
        Eigen::MatrixXd Ap(A.rows(), static_cast<int>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(static_cast<int>(k)) = A.col(idx[k]);
        Eigen::VectorXd sp = Ap.colPivHouseholderQr().solve(b);
        s.setZero();
        for (std::size_t k = 0; k < idx.size(); ++k) s[idx[k]] = sp[static_cast<int>(k)];
    };

    Eigen::VectorXd w = A.transpose() * (b - A * lam);
    for (int iter = 0; iter < maxIter; ++iter) {
        int j = -1;
        double best = tol;
        for (int i = 0; i < m; ++i)
            if (!passive[static_cast<std::size_t>(i)] && w[i] > best) {
                best = w[i];
                j = i;
            }
        if (j < 0) return lam;
        passive[static_cast<std::size_t>(j)] = true;

        Eigen::VectorXd s(m);
        for (int inner = 0; inner < maxIter; ++inner) {
            solvePassive(s);
            bool ok = true;
            for (int i = 0; i < m; ++i)
                if (passive[static_cast<std::size_t>(i)] && s[i] <= 0.0) ok = false;
            if (ok) break;
            double alpha = 1.0;
            for (int i = 0; i < m; ++i)
                if (passive[static_cast<std::size_t>(i)] && s[i] <= 0.0)
                    alpha = std::min(alpha, lam[i] / (lam[i] - s[i]));
            lam += alpha * (s - lam);
            for (int i = 0; i < m; ++i)
                if (passive[static_cast<std::size_t>(i)] && lam[i] <= 1e-14) {
                    passive[static_cast<std::size_t>(i)] = false;
                    lam[i] = 0.0;
                }
        }
        lam = s.cwiseMax(0.0);
        w = A.transpose() * (b - A * lam);
    }
    throw std::runtime_error("nnls failed to converge");
}

Eigen::VectorXd dykstraProject(
    const Eigen::VectorXd& x,
    const std::vector<std::function<Eigen::VectorXd(const Eigen::VectorXd&)>>& projectors,
    double tol, int maxSweeps) {
    const std::size_t m = projectors.size();
    Eigen::VectorXd z = x;
    std::vector<Eigen::VectorXd> corr(m, Eigen::VectorXd::Zero(x.size()));
    double scale = 1.0 + x.norm();
    for (int sweep = 0; sweep < maxSweeps; ++sweep) {
        Eigen::VectorXd prev = z;
        for (std::size_t i = 0; i < m; ++i) {
            Eigen::VectorXd y = projectors[i](z + corr[i]);
            corr[i] = z + corr[i] - y;
            z = y;
        }
        if ((z - prev).norm() <= tol * scale && sweep > 0) return z;
    }
    throw std::runtime_error("Dykstra projection did not converge");
}

}  // namespace conelat
