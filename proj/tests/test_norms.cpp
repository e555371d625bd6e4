#include <doctest.h>

#include "conelat/norms.hpp"
#include "conelat/rng.hpp"
#include "conelat/splitting.hpp"

using namespace conelat;

namespace {

double proxObjective(const Eigen::VectorXd& w, const Eigen::VectorXd& u, double gamma, double p) {
    return gamma * lpNorm(w, p) + 0.5 * (w - u).squaredNorm();
}

}  // namespace

TEST_CASE("lp norm axioms on random inputs") {
    Rng rng(1);
    for (double p : {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
        for (int i = 0; i < 200; ++i) {
            Eigen::VectorXd x = rng.gaussianVector(5), y = rng.gaussianVector(5);
            double nx = lpNorm(x, p), ny = lpNorm(y, p);
            CHECK(nx >= 0.0);
            CHECK(lpNorm(x + y, p) <= nx + ny + 1e-12);
            double a = rng.uniform(-3.0, 3.0);
            CHECK(lpNorm(a * x, p) == doctest::Approx(std::abs(a) * nx).epsilon(1e-12));
        }
        CHECK(lpNorm(Eigen::VectorXd::Zero(4), p) == 0.0);
    }
}

TEST_CASE("norm spec flags and dual exponents") {
    CHECK(NormSpec::l2().strictlyConvex());
    CHECK(NormSpec::lp(1.5).smooth());
    CHECK(!NormSpec::l1().strictlyConvex());
    CHECK(!NormSpec::linf().strictlyConvex());
    CHECK(NormSpec::l1().dualExponent() == std::numeric_limits<double>::infinity());
    CHECK(NormSpec::linf().dualExponent() == 1.0);
    CHECK(NormSpec::lp(3.0).dualExponent() == doctest::Approx(1.5));
}

TEST_CASE("norm prox minimizes its objective") {
    Rng rng(2);
    for (double p : {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
        for (int i = 0; i < 60; ++i) {
            Eigen::VectorXd u = 2.0 * rng.gaussianVector(4);
            double gamma = rng.uniform(0.1, 2.0);
            Eigen::VectorXd w = normProx(u, gamma, p);
            double base = proxObjective(w, u, gamma, p);
            for (int k = 0; k < 25; ++k) {
                Eigen::VectorXd probe = w + 0.05 * rng.gaussianVector(4);
                CHECK(base <= proxObjective(probe, u, gamma, p) + 1e-9);
            }
        }
    }
}

TEST_CASE("prox zero region matches the dual-norm ball") {
    Rng rng(3);
    for (double p : {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
        double q = NormSpec::lp(p).dualExponent();
        for (int i = 0; i < 120; ++i) {
            Eigen::VectorXd u = rng.gaussianVector(4);
            double gamma = rng.uniform(0.2, 2.0);
            bool zero = normProx(u, gamma, p).norm() < 1e-9;
            CHECK(zero == (lpNorm(u, q) <= gamma * (1.0 + 1e-12)));
        }
    }
}

TEST_CASE("l1 ball projection is optimal") {
    Rng rng(4);
    for (int i = 0; i < 150; ++i) {
        Eigen::VectorXd u = 2.0 * rng.gaussianVector(5);
        double r = rng.uniform(0.2, 3.0);
        Eigen::VectorXd w = projectL1Ball(u, r);
        CHECK(w.lpNorm<1>() <= r * (1.0 + 1e-12));
        // variational inequality against random feasible points
        for (int k = 0; k < 20; ++k) {
            Eigen::VectorXd c = rng.gaussianVector(5);
            c = projectL1Ball(c, r);
            CHECK((u - w).dot(c - w) <= 1e-9);
        }
    }
}

TEST_CASE("lp ball projection is feasible and optimal") {
    Rng rng(5);
    for (double p : {1.0, 1.5, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
        for (int i = 0; i < 40; ++i) {
            Eigen::VectorXd u = 2.0 * rng.gaussianVector(4);
            double r = rng.uniform(0.3, 2.0);
            Eigen::VectorXd w = projectLpBall(u, r, p);
            CHECK(lpNorm(w, p) <= r * (1.0 + 1e-9));
            double base = (w - u).squaredNorm();
            for (int k = 0; k < 15; ++k) {
                Eigen::VectorXd c = projectLpBall(rng.gaussianVector(4) * 2.0, r, p);
                CHECK(base <= (c - u).squaredNorm() + 1e-9);
            }
        }
    }
}
