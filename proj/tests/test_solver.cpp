#include <doctest.h>

#include <cmath>

#include "conelat/quasisup.hpp"

using namespace conelat;

namespace {

Eigen::VectorXd vec3(double a, double b, double c) {
    Eigen::VectorXd v(3);
    v << a, b, c;
    return v;
}

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("sigma distance sum") {
    NormSpec l2 = NormSpec::l2(), linf = NormSpec::linf();
    Eigen::VectorXd x = vec3(1, -1, 0);
    CHECK(sigmaDistanceSum(x, x, x, l2) == 0.0);
    // the flat linf example: z_t = (1, 0, t) carries sigma = 2
    CHECK(sigmaDistanceSum(x, vec3(0, 0, 0), vec3(1, 0, 0.5), linf) == doctest::Approx(2.0));
    // and the icecream pair at its minimizer
    CHECK(sigmaDistanceSum(vec3(0, 0, 0), vec3(0, 0, 2), vec3(1, 0, 1), l2) ==
          doctest::Approx(2.0 * std::sqrt(2.0)));
    Eigen::VectorXd bad(2);
    bad << 0, 0;
    CHECK_THROWS_AS(sigmaDistanceSum(x, x, bad, l2), std::invalid_argument);
}

TEST_CASE("icecream pair: closed form, splitting and oracle agree") {
    OrderedSpace space = OrderedSpace::lorentzRn(3);
    Eigen::VectorXd x = vec3(0, 0, 0), y = vec3(0, 0, 2), expect = vec3(1, 0, 1);

    QuasiSupResult closed = quasiSup(space, x, y);
    CHECK(closed.status == SolveStatus::Unique);
    CHECK((closed.z - expect).norm() <= 1e-9);

    SolverOptions opts;
    opts.forceGeneralPath = true;
    QuasiSupResult split = quasiSup(space, x, y, opts);
    CHECK(split.status == SolveStatus::Unique);
    CHECK((split.z - expect).norm() <= 1e-6);

    QuasiSupResult oracle = bruteForceQuasiSup(space, x, y);
    CHECK(oracle.status == SolveStatus::Unique);
    CHECK((oracle.z - expect).norm() <= 1e-3);  // after local refinement
    CHECK(std::abs(oracle.sigmaValue - 2.0 * std::sqrt(2.0)) <= 1e-4);
}

TEST_CASE("half-Lorentz associativity failure values") {
    OrderedSpace space = OrderedSpace::halfLorentzR3();
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    Eigen::VectorXd a = vec3(0, 0, 0), b = vec3(0, -1, 1), c = vec3(0, -1, -1);

    QuasiSupResult ab = quasiSup(space, a, b);
    CHECK(ab.status == SolveStatus::Unique);
    CHECK((ab.z - vec3(2.0 * std::sqrt(2.0 - s3), 0, s3 - 1.0)).norm() <= 1e-4);

    QuasiSupResult bc = quasiSup(space, b, c);
    CHECK((bc.z - vec3(1, -1, 0)).norm() <= 1e-4);

    QuasiSupResult a_bc = quasiSup(space, a, bc.z);
    CHECK((a_bc.z - vec3(2, 0, 0)).norm() <= 1e-4);

    const double kappa = (-29.0 - 8.0 * s2 + 9.0 * s3 + 12.0 * s6) / 23.0;
    QuasiSupResult ab_c = quasiSup(space, ab.z, c);
    CHECK((ab_c.z - vec3(std::sqrt(1.0 + (1.0 + kappa) * (1.0 + kappa)), 0, kappa)).norm() <=
          1e-4);

    CHECK((a_bc.z - ab_c.z).norm() > 0.1);
}

TEST_CASE("polynomial cone quasi-supremum") {
    OrderedSpace space = OrderedSpace::polyNonnegR3();
    Eigen::VectorXd x = vec3(0, 1, 0), y = vec3(0, -1, 1);
    const double s3 = std::sqrt(3.0);
    Eigen::VectorXd expect = vec3(0.5 * (2.0 - s3), -0.5 * (2.0 - s3), 1.0);
    QuasiSupResult r = quasiSup(space, x, y);
    CHECK(r.status == SolveStatus::Unique);
    CHECK((r.z - expect).norm() <= 1e-4);
}

TEST_CASE("flat minima are detected with their sigma level") {
    SUBCASE("linf standard cone") {
        OrderedSpace space = OrderedSpace::standardRn(3, kInf);
        QuasiSupResult r = quasiSup(space, vec3(1, -1, 0), vec3(0, 0, 0));
        CHECK(r.status == SolveStatus::FlatMinimum);
        REQUIRE(r.witnesses.size() >= 2);
        for (const auto& w : r.witnesses) {
            CHECK(sigmaDistanceSum(vec3(1, -1, 0), vec3(0, 0, 0), w, space.norm) ==
                  doctest::Approx(2.0).epsilon(1e-6));
        }
        // distinct witnesses
        CHECK((r.witnesses[0] - r.witnesses[1]).norm() > 1e-4);
    }
    SUBCASE("four-ray cone") {
        OrderedSpace space = OrderedSpace::fourRayR3Linf();
        QuasiSupResult r = quasiSup(space, vec3(0, 0, 0), vec3(2, 0, 0));
        CHECK(r.status == SolveStatus::FlatMinimum);
        REQUIRE(r.witnesses.size() >= 2);
        for (const auto& w : r.witnesses)
            CHECK(sigmaDistanceSum(vec3(0, 0, 0), vec3(2, 0, 0), w, space.norm) ==
                  doctest::Approx(2.0).epsilon(1e-6));
    }
    SUBCASE("oracle sees the same flat segment") {
        OrderedSpace space = OrderedSpace::standardRn(3, kInf);
        QuasiSupResult r = bruteForceQuasiSup(space, vec3(1, -1, 0), vec3(0, 0, 0));
        CHECK(r.status == SolveStatus::FlatMinimum);
        CHECK(r.witnesses.size() >= 2);
    }
}

TEST_CASE("closed form equals splitting on random Lorentz instances") {
    Rng rng(31);
    for (int n : {2, 3, 5, 8}) {
        OrderedSpace space = OrderedSpace::lorentzRn(n);
        for (int i = 0; i < 8; ++i) {
            Eigen::VectorXd x = rng.gaussianVector(n), y = rng.gaussianVector(n);
            QuasiSupResult fast = quasiSup(space, x, y);
            SolverOptions opts;
            opts.forceGeneralPath = true;
            opts.nRestarts = 2;
            QuasiSupResult gen = quasiSup(space, x, y, opts);
            CAPTURE(n);
            CHECK(fast.status == SolveStatus::Unique);
            CHECK(gen.status == SolveStatus::Unique);
            CHECK((fast.z - gen.z).norm() <= 1e-6);
        }
    }
}

TEST_CASE("solver invariants on random instances across families") {
    Rng rng(32);
    std::vector<OrderedSpace> spaces = {OrderedSpace::standardRn(3), OrderedSpace::lorentzRn(3),
                                        OrderedSpace::halfLorentzR3(),
                                        OrderedSpace::polyNonnegR3(129)};
    for (const OrderedSpace& space : spaces) {
        CAPTURE(space.cone.kindName());
        for (int i = 0; i < 6; ++i) {
            Eigen::VectorXd x = rng.gaussianVector(3), y = rng.gaussianVector(3);
            SolverOptions opts;
            opts.nRestarts = 2;
            QuasiSupResult r = quasiSup(space, x, y, opts);
            REQUIRE(r.ok());
            // sigma lower bound from the triangle inequality
            CHECK(r.sigmaValue >= space.normOf(x - y) - 1e-9);
            // feasibility
            CHECK(orderLeq(space, x, r.z, 1e-6));
            CHECK(orderLeq(space, y, r.z, 1e-6));
            // translation covariance
            Eigen::VectorXd w = rng.gaussianVector(3);
            QuasiSupResult rt = quasiSup(space, x + w, y + w, opts);
            CHECK((rt.z - (r.z + w)).norm() <= 1e-5);
            // positive homogeneity
            double alpha = rng.uniform(0.5, 2.0);
            QuasiSupResult rh = quasiSup(space, alpha * x, alpha * y, opts);
            CHECK((rh.z - alpha * r.z).norm() <= 1e-5 * alpha);
        }
    }
}

TEST_CASE("solver matches the grid oracle on random instances") {
    Rng rng(33);
    std::vector<OrderedSpace> spaces = {OrderedSpace::standardRn(3), OrderedSpace::lorentzRn(3),
                                        OrderedSpace::halfLorentzR3()};
    Eigen::MatrixXd G(4, 3);
    G << 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1;
    Eigen::MatrixXd none;
    spaces.push_back(OrderedSpace::make(ConeSpec::polyhedral(3, G, none), NormSpec::l2()));
    for (const OrderedSpace& space : spaces) {
        CAPTURE(space.cone.kindName());
        for (int i = 0; i < 5; ++i) {
            Eigen::VectorXd x = rng.gaussianVector(3), y = rng.gaussianVector(3);
            SolverOptions opts;
            opts.nRestarts = 2;
            QuasiSupResult solver = quasiSup(space, x, y, opts);
            QuasiSupResult oracle = bruteForceQuasiSup(space, x, y);
            REQUIRE(solver.ok());
            REQUIRE(oracle.ok());
            double step = (2.0 + space.normOf(x - y)) / 80.0;
            CHECK((solver.z - oracle.z).norm() <= 2.0 * step);
            CHECK(std::abs(solver.sigmaValue - oracle.sigmaValue) <= 1e-3);
        }
    }
}

TEST_CASE("infeasible and iteration-capped statuses") {
    // a single ray in R^2 cannot majorize generic pairs
    Eigen::MatrixXd ray(1, 2);
    ray << 1, 0;
    Eigen::MatrixXd none;
    OrderedSpace s = OrderedSpace::make(ConeSpec::polyhedral(2, ray, none), NormSpec::l2());
    Eigen::VectorXd x(2), y(2);
    x << 0, 0;
    y << 0, 1;
    QuasiSupResult r = quasiSup(s, x, y);
    CHECK(r.status == SolveStatus::Infeasible);

    OrderedSpace half = OrderedSpace::halfLorentzR3();
    SolverOptions opts;
    opts.maxIter = 3;
    opts.nRestarts = 1;
    QuasiSupResult capped = quasiSup(half, vec3(0, 0, 0), vec3(0, -1, 1), opts);
    CHECK(capped.status == SolveStatus::MaxIter);
}

TEST_CASE("minimal upper bounds") {
    SUBCASE("lattice supremum is minimal") {
        OrderedSpace space = OrderedSpace::standardRn(3);
        Eigen::VectorXd x = vec3(1, -1, 0), y = vec3(0, 2, -1);
        Eigen::VectorXd z = x.cwiseMax(y);
        CHECK(isMinimalUpperBound(space, x, y, z).minimal);
        // anything strictly above is not minimal
        CHECK(!isMinimalUpperBound(space, x, y, z + vec3(0.5, 0.5, 0.5)).minimal);
    }
    SUBCASE("icecream quasi-supremum is minimal") {
        OrderedSpace space = OrderedSpace::lorentzRn(3);
        MinimalityResult r =
            isMinimalUpperBound(space, vec3(0, 0, 0), vec3(0, 0, 2), vec3(1, 0, 1));
        CHECK(r.minimal);
    }
    SUBCASE("polynomial cone quasi-supremum is not minimal") {
        OrderedSpace space = OrderedSpace::polyNonnegR3();
        Eigen::VectorXd x = vec3(0, 1, 0), y = vec3(0, -1, 1);
        QuasiSupResult qs = quasiSup(space, x, y);
        REQUIRE(qs.status == SolveStatus::Unique);
        MinimalityResult r = isMinimalUpperBound(space, x, y, qs.z);
        CHECK(!r.minimal);
        REQUIRE(r.witness.has_value());
        // the witness is a real slack: z - d is still an upper bound
        Eigen::VectorXd zd = qs.z - *r.witness;
        CHECK(orderLeq(space, x, zd, 1e-6));
        CHECK(orderLeq(space, y, zd, 1e-6));
        CHECK(r.witness->norm() > 1e-3);
    }
    SUBCASE("non-upper-bound is rejected") {
        OrderedSpace space = OrderedSpace::standardRn(3);
        CHECK_THROWS_AS(
            isMinimalUpperBound(space, vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 0)),
            std::invalid_argument);
    }
}

TEST_CASE("monotone spaces: unique minimizers are minimal upper bounds") {
    Rng rng(34);
    for (const OrderedSpace& space : {OrderedSpace::lorentzRn(3), OrderedSpace::standardRn(3),
                                      OrderedSpace::halfLorentzR3()}) {
        REQUIRE(space.monotoneHint.value_or(false));
        for (int i = 0; i < 5; ++i) {
            Eigen::VectorXd x = rng.gaussianVector(3), y = rng.gaussianVector(3);
            SolverOptions opts;
            opts.nRestarts = 2;
            QuasiSupResult r = quasiSup(space, x, y, opts);
            REQUIRE(r.status == SolveStatus::Unique);
            CHECK(isMinimalUpperBound(space, x, y, r.z, 1e-5, opts).minimal);
        }
    }
}

TEST_CASE("lexicographic tie-break is deterministic") {
    OrderedSpace space = OrderedSpace::standardRn(3, kInf);
    QuasiSupResult a = quasiSup(space, vec3(1, -1, 0), vec3(0, 0, 0));
    QuasiSupResult b = quasiSup(space, vec3(1, -1, 0), vec3(0, 0, 0));
    REQUIRE(a.status == SolveStatus::FlatMinimum);
    CHECK((a.z - b.z).norm() == 0.0);
    for (const auto& w : a.witnesses) {
        // reported point is the lexicographically smallest witness
        bool geq = true;
        for (int i = 0; i < 3; ++i) {
            if (w[i] > a.z[i] + 1e-9) break;
            if (w[i] < a.z[i] - 1e-9) {
                geq = false;
                break;
            }
        }
        CHECK(geq);
    }
}
