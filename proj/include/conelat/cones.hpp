#pragma once

#include <Eigen/Core>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelat/rng.hpp"

namespace conelat {

// Closed convex cone descriptor. Supported families:
//   Standard        nonnegative orthant in R^n
//   Lorentz         {x : <v|x> >= ||Px||_2}, v a unit axis, P = proj onto v-perp
//   HalfLorentz     Lorentz cut by one extra half-space <h|x> >= 0, h unit, h _|_ v
//   Polyhedral      finitely generated / finitely constrained cone
//   PolyNonneg      coefficient cones {(a,b,c) : a t^2 + b t + c >= 0 on a grid in [0,1]}
//   WeightedLorentz {x : x_1 >= ||W P x||_2} with per-coordinate weights on x_2..x_n
//                   (the ellipsoidal cone of the weighted-l2 counterexample space)
class ConeSpec {
public:
    enum class Kind { Standard, Lorentz, HalfLorentz, Polyhedral, PolyNonneg, WeightedLorentz };

    static ConeSpec standard(int n);
    static ConeSpec lorentz(const Eigen::VectorXd& axis);
    static ConeSpec halfLorentz(const Eigen::VectorXd& axis, const Eigen::VectorXd& halfspace);
    // rows of `generators` are rays, rows of `halfspaces` are inward normals
    // (<n|x> >= 0); either may be empty and is then derived for dim <= 4
    static ConeSpec polyhedral(int dim, const Eigen::MatrixXd& generators,
                               const Eigen::MatrixXd& halfspaces);
    static ConeSpec polyNonneg(int gridPoints = 257);
    static ConeSpec weightedLorentz(const Eigen::VectorXd& weights);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    std::string kindName() const;

    // Signed worst violation of the defining inequalities, each normalized so
    // that the value is comparable with coordinate tolerances. <= 0 means the
    // point is a member.
    double residual(const Eigen::VectorXd& x) const;

    bool contains(const Eigen::VectorXd& x, double tol = kDefaultMembershipTol) const {
        checkDim(x);
        return residual(x) <= tol;
    }

    // Euclidean projection. Lorentz family and Standard are closed form,
    // Polyhedral/PolyNonneg use an exact active-set solve on the generator
    // representation, HalfLorentz reduces to two nested Lorentz cases.
    Eigen::VectorXd project(const Eigen::VectorXd& x) const;

    // Dual cone under the l2 pairing. Unsupported for HalfLorentz.
    ConeSpec dual() const;

    // Some z with z in C and z - d in C; used to certify the generating
    // property constructively. Throws if the cone cannot majorize d.
    Eigen::VectorXd upperBoundShift(const Eigen::VectorXd& d) const;

    // Random cone member, biased to include boundary and interior points.
    Eigen::VectorXd sampleMember(Rng& rng, double scale = 1.0) const;

    bool isProper() const;
    bool isGenerating() const;

    // accessors for the variant payloads
    const Eigen::VectorXd& axis() const { return axis_; }
    const Eigen::VectorXd& halfspaceNormal() const { return half_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    const Eigen::MatrixXd& generators() const { return generators_; }
    const Eigen::MatrixXd& halfspaces() const { return halfspaces_; }
    const Eigen::VectorXd& grid() const { return grid_; }

    static constexpr double kDefaultMembershipTol = 1e-9;

private:
    ConeSpec() = default;
    void checkDim(const Eigen::VectorXd& x) const {
        if (x.size() != dim_)
            throw std::invalid_argument("cone/vector dimension mismatch: " +
                                        std::to_string(x.size()) + " vs " + std::to_string(dim_));
    }

    Kind kind_ = Kind::Standard;
    int dim_ = 0;
    Eigen::VectorXd axis_;        // Lorentz, HalfLorentz
    Eigen::VectorXd half_;        // HalfLorentz
    Eigen::VectorXd weights_;     // WeightedLorentz (dim-1 entries)
    Eigen::MatrixXd generators_;  // Polyhedral (rows)
    Eigen::MatrixXd halfspaces_;  // Polyhedral (rows)
    Eigen::VectorXd grid_;        // PolyNonneg (sorted, includes 0 and 1)
};

// min ||A*lam - b||_2 subject to lam >= 0 (Lawson-Hanson active set).
// Returns lam; residual available as (A*lam - b).norm().
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int maxIter = 0);

// Dykstra's alternating projections onto an intersection of convex sets,
// given their individual projectors. Throws on non-convergence.
Eigen::VectorXd dykstraProject(
    const Eigen::VectorXd& x,
    const std::vector<std::function<Eigen::VectorXd(const Eigen::VectorXd&)>>& projectors,
    double tol = 1e-10, int maxSweeps = 20000);

// Chebyshev points mapped to [0,1], sorted ascending, endpoints included.
Eigen::VectorXd chebyshevGrid01(int n);

}  // namespace conelat
