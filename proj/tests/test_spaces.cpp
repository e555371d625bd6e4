#include <doctest.h>

#include "conelat/json_io.hpp"
#include "conelat/spaces.hpp"

using namespace conelat;

namespace {

Eigen::VectorXd vec3(double a, double b, double c) {
    Eigen::VectorXd v(3);
    v << a, b, c;
    return v;
}

std::vector<OrderedSpace> testSpaces() {
    return {OrderedSpace::standardRn(3),  OrderedSpace::lorentzRn(3),
            OrderedSpace::halfLorentzR3(), OrderedSpace::fourRayR3Linf(),
            OrderedSpace::polyNonnegR3(129), OrderedSpace::weightedL2Cone(6)};
}

}  // namespace

TEST_CASE("order relation basics") {
    OrderedSpace lor = OrderedSpace::lorentzRn(3);
    CHECK(orderLeq(lor, vec3(0, 0, 0), vec3(1, 0, 1)));  // the upper bound of the icecream pair
    OrderedSpace std3 = OrderedSpace::standardRn(3);
    CHECK(!orderLeq(std3, vec3(1, 0, 0), vec3(0, 0, 0)));
    Rng rng(21);
    for (const OrderedSpace& s : testSpaces()) {
        for (int i = 0; i < 60; ++i) {
            Eigen::VectorXd x = rng.gaussianVector(s.dim);
            CHECK(orderLeq(s, x, x, 0.0));  // reflexive: 0 is in every cone
            // transitivity on constructed chains
            Eigen::VectorXd y = x + s.cone.sampleMember(rng);
            Eigen::VectorXd z = y + s.cone.sampleMember(rng);
            CHECK(orderLeq(s, x, y, 1e-8));
            CHECK(orderLeq(s, y, z, 1e-8));
            CHECK(orderLeq(s, x, z, 1e-7));
        }
    }
}

TEST_CASE("antisymmetry holds exactly for proper cones") {
    Rng rng(22);
    for (const OrderedSpace& s : testSpaces()) {
        REQUIRE(s.proper);
        for (int i = 0; i < 80; ++i) {
            Eigen::VectorXd c = s.cone.sampleMember(rng);
            if (c.norm() < 1e-6) continue;
            // 0 <= c but not c <= 0
            CHECK(!orderLeq(s, c, Eigen::VectorXd::Zero(s.dim), 1e-9 * c.norm()));
        }
    }
}

TEST_CASE("upper bounds exist and majorize") {
    Rng rng(23);
    for (const OrderedSpace& s : testSpaces()) {
        CAPTURE(s.cone.kindName());
        REQUIRE(s.generating);
        for (int i = 0; i < 80; ++i) {
            Eigen::VectorXd x = 2.0 * rng.gaussianVector(s.dim);
            Eigen::VectorXd y = 2.0 * rng.gaussianVector(s.dim);
            Eigen::VectorXd z = upperBoundAny(s, x, y);
            CHECK(orderLeq(s, x, z, 1e-7));
            CHECK(orderLeq(s, y, z, 1e-7));
            // generating: x = a - b with both parts in the cone
            Eigen::VectorXd a = upperBoundAny(s, x, Eigen::VectorXd::Zero(s.dim));
            CHECK(s.cone.contains(a, 1e-7));
            CHECK(s.cone.contains(a - x, 1e-7));
        }
    }
}

TEST_CASE("upper bound examples") {
    OrderedSpace std3 = OrderedSpace::standardRn(3);
    CHECK((upperBoundAny(std3, vec3(1, -1, 0), vec3(0, 0, 0)) - vec3(1, 0, 0)).norm() == 0.0);

    OrderedSpace lor = OrderedSpace::lorentzRn(3);
    Eigen::VectorXd z = upperBoundAny(lor, vec3(0, 0, 0), vec3(0, 0, 2));
    CHECK(orderLeq(lor, vec3(0, 0, 0), z, 1e-9));
    CHECK(orderLeq(lor, vec3(0, 0, 2), z, 1e-9));

    OrderedSpace poly = OrderedSpace::polyNonnegR3();
    Eigen::VectorXd zp = upperBoundAny(poly, vec3(0, 1, 0), vec3(0, -1, 1));
    CHECK(orderLeq(poly, vec3(0, 1, 0), zp, 1e-9));
    CHECK(orderLeq(poly, vec3(0, -1, 1), zp, 1e-9));
}

TEST_CASE("space JSON round trip preserves behavior") {
    Rng rng(24);
    for (const OrderedSpace& s : testSpaces()) {
        OrderedSpace back = spaceFromJson(toJson(s));
        CHECK(back.dim == s.dim);
        CHECK(back.norm.p == s.norm.p);
        CHECK(back.cone.kindName() == s.cone.kindName());
        for (int i = 0; i < 60; ++i) {
            Eigen::VectorXd x = 2.0 * rng.gaussianVector(s.dim);
            CHECK(s.cone.contains(x, 1e-9) == back.cone.contains(x, 1e-9));
            CHECK(s.normOf(x) == doctest::Approx(back.normOf(x)).epsilon(1e-14));
        }
    }
}

TEST_CASE("space JSON schema errors") {
    CHECK_THROWS(spaceFromJson(json::parse(R"({"cone":{"kind":"nope"}})")));
    CHECK_THROWS(spaceFromJson(json::parse(R"({"dim":4,"cone":{"kind":"standard","dim":3}})")));
    CHECK_THROWS(normFromJson(json::parse(R"({"p":0.5})")));
    CHECK_THROWS(coneFromJson(json::parse(R"({"kind":"lorentz","axis":[0,0,0]})")));
}

TEST_CASE("dual space conjugates the exponent") {
    OrderedSpace s = OrderedSpace::standardRn(3, 1.0);
    CHECK(s.dualSpace().norm.isInf());
    OrderedSpace l = OrderedSpace::lorentzRn(3);
    CHECK(l.dualSpace().norm.p == doctest::Approx(2.0));
}

TEST_CASE("vector argument parsing") {
    Eigen::VectorXd a = parseVectorArg("1,0,2.5");
    CHECK(a.size() == 3);
    CHECK(a[2] == doctest::Approx(2.5));
    Eigen::VectorXd b = parseVectorArg("[1, -1, 0]");
    CHECK((b - vec3(1, -1, 0)).norm() == 0.0);
    CHECK_THROWS(parseVectorArg(""));
}
