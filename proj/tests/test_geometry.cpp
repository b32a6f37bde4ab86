#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperslender/geometry.hpp"

using namespace hyperslender;

TEST_CASE("linear profile evaluates to a*x with flat curvature") {
    BodyProfile b = make_profile(ProfileFamily::linear, 2.5, 4.0);
    const ProfileEval e = b.eval(1.6);
    CHECK(e.b == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(e.db == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(e.ddb == 0.0);
    CHECK(b.value(0.0) == 0.0);
}

TEST_CASE("power profile with p=2") {
    BodyProfile b = make_profile(ProfileFamily::power, 1.0, 3.0, 2.0);
    CHECK(b.value(1.5) == doctest::Approx(2.25).epsilon(1e-15));
    CHECK(b.slope(1.5) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(b.curvature(1.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(b.curvature(0.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("fractional power p=2.5 stays finite at the tip") {
    BodyProfile b = make_profile(ProfileFamily::power, 0.7, 2.0, 2.5);
    CHECK(b.value(0.0) == 0.0);
    CHECK(b.slope(0.0) == 0.0);
    CHECK(b.curvature(0.0) == 0.0);
    CHECK(b.value(2.0) == doctest::Approx(0.7 * std::pow(2.0, 2.5)).epsilon(1e-14));
}

TEST_CASE("exponential profile") {
    BodyProfile b = make_profile(ProfileFamily::exponential, 1.2, 2.0);
    CHECK(b.value(1.0) == doctest::Approx(1.2 * (std::exp(1.0) - 1.0)).epsilon(1e-15));
    CHECK(b.slope(1.0) == doctest::Approx(1.2 * std::exp(1.0)).epsilon(1e-15));
    CHECK(b.curvature(1.0) == doctest::Approx(1.2 * std::exp(1.0)).epsilon(1e-15));
    CHECK(b.value(0.0) == 0.0);
}

TEST_CASE("log profile frozen point values") {
    BodyProfile b = make_profile(ProfileFamily::logarithmic, 1.0, 3.0);
    const ProfileEval e = b.eval(1.0);
    CHECK(e.b == doctest::Approx(0.6931471805599453).epsilon(1e-15));
    CHECK(e.db == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(e.ddb == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("sum profile adds terms") {
    BodyProfile b = BodyProfile::make(
        {ProfileTerm{ProfileFamily::linear, 0.5, 1.0},
         ProfileTerm{ProfileFamily::power, 1.0, 2.0}},
        2.0);
    CHECK(b.value(1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(b.slope(1.0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(b.curvature(1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("bad exponents rejected") {
    CHECK_THROWS_AS(make_profile(ProfileFamily::power, 1.0, 1.0, 1.5), BadExponent);
    CHECK_THROWS_AS(make_profile(ProfileFamily::power, 1.0, 1.0, 0.5), BadExponent);
    CHECK_NOTHROW(make_profile(ProfileFamily::power, 1.0, 1.0, 1.0));
    CHECK_NOTHROW(make_profile(ProfileFamily::power, 1.0, 1.0, 2.0));
}

TEST_CASE("monotonicity enforced") {
    CHECK_THROWS_AS(make_profile(ProfileFamily::linear, -1.0, 1.0), NonMonotone);
    // 0.5 x - ln(1+x): slope 0.5 - 1/(1+x) < 0 near the tip
    CHECK_THROWS_AS(BodyProfile::make({ProfileTerm{ProfileFamily::linear, 0.5, 1.0},
                                       ProfileTerm{ProfileFamily::logarithmic, -1.0, 1.0}},
                                      2.0),
                    NonMonotone);
    // 2x - ln(1+x): slope 2 - 1/(1+x) > 0 everywhere
    CHECK_NOTHROW(BodyProfile::make({ProfileTerm{ProfileFamily::linear, 2.0, 1.0},
                                     ProfileTerm{ProfileFamily::logarithmic, -1.0, 1.0}},
                                    2.0));
}

TEST_CASE("domain bounds enforced") {
    BodyProfile b = make_profile(ProfileFamily::linear, 1.0, 2.0);
    CHECK_THROWS_AS(b.eval(-0.1), OutOfDomain);
    CHECK_THROWS_AS(b.eval(2.1), OutOfDomain);
    CHECK_NOTHROW(b.eval(2.0));
    CHECK_THROWS_AS(make_profile(ProfileFamily::linear, 1.0, -1.0), BadParameter);
}

TEST_CASE("parse round-trips through describe") {
    for (const char* spec :
         {"linear:a=1", "power:a=1,p=2", "power:a=0.5,p=2.5", "exp:a=2",
          "log:a=1.5", "sum:linear:a=0.5+power:a=1,p=2"}) {
        BodyProfile b = parse_profile(spec, 2.0);
        BodyProfile b2 = parse_profile(b.describe(), 2.0);
        CHECK(b.describe() == b2.describe());
        CHECK(b.value(1.7) == b2.value(1.7));
    }
}

TEST_CASE("parse accepts long family names and defaults") {
    CHECK(parse_profile("exponential:a=1", 1.0).describe() == "exp:a=1");
    CHECK(parse_profile("logarithmic:a=1", 1.0).describe() == "log:a=1");
    CHECK(parse_profile("linear", 1.0).value(1.0) == 1.0);
    CHECK(parse_profile("power", 1.0).describe() == "power:a=1,p=2");
}

TEST_CASE("parse rejects garbage") {
    CHECK_THROWS_AS(parse_profile("cubic:a=1", 1.0), BadParameter);
    CHECK_THROWS_AS(parse_profile("linear:a=", 1.0), BadParameter);
    CHECK_THROWS_AS(parse_profile("linear:b=1", 1.0), BadParameter);
    CHECK_THROWS_AS(parse_profile("linear:p=2", 1.0), BadParameter);
    CHECK_THROWS_AS(parse_profile("sum:", 1.0), BadParameter);
    CHECK_THROWS_AS(parse_profile("linear:a=0", 1.0), BadParameter);
}

TEST_CASE("wedge admissibility, straight body") {
    BodyProfile b = make_profile(ProfileFamily::linear, 1.0, 2.0);
    const AdmissibilityVerdict v = admissible_A(b, 0.1, 1.4, 1.0);
    CHECK(v.admissible);
    // flat curvature: margin = (1+tau^2)^{3/2}/(gamma K^2) + (1+tau^2)^{1/2}
    const double A = 1.01;
    const double expect = std::pow(A, 1.5) / 1.4 + std::sqrt(A);
    CHECK(v.worst_margin == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("scaled planar admissibility, straight body") {
    BodyProfile b = make_profile(ProfileFamily::linear, 1.0, 2.0);
    const AdmissibilityVerdict v = admissible_B(b, 1.4, 1.0);
    CHECK(v.admissible);
    CHECK(v.worst_margin == doctest::Approx(1.0 / 1.4 + 1.0).epsilon(1e-14));
}

TEST_CASE("scaled planar admissibility can fail for log bodies at large K") {
    // 1/(gamma K^2) + b'^2 + b b'' with b = ln(1+x) dips negative once
    // K is large and x is moderate; minimum sits at x = e^{3/2} - 1.
    BodyProfile b = make_profile(ProfileFamily::logarithmic, 1.0, 20.0);
    const AdmissibilityVerdict v = admissible_B(b, 1.4, 10.0, 8192);
    CHECK_FALSE(v.admissible);
    CHECK(v.worst_margin == doctest::Approx(-0.0177506770410748).epsilon(1e-6));
    CHECK(v.worst_x == doctest::Approx(std::exp(1.5) - 1.0).epsilon(1e-2));
}

TEST_CASE("axisym admissibility margins") {
    BodyProfile f = make_profile(ProfileFamily::linear, 1.0, 2.0);
    CHECK(admissible_A3(f, 0.1, 1.4, 1.0).admissible);
    CHECK(admissible_B3(f, 1.4, 1.0).admissible);
    BodyProfile f2 = make_profile(ProfileFamily::power, 1.0, 2.0, 2.0);
    CHECK(admissible_A3(f2, 0.1, 1.4, 1.0).admissible);
    CHECK(admissible_B3(f2, 1.4, 1.0).admissible);
}

TEST_CASE("admissibility validates parameters") {
    BodyProfile b = make_profile(ProfileFamily::linear, 1.0, 1.0);
    CHECK_THROWS_AS(admissible_A(b, 1.5, 1.4, 1.0), BadParameter); // tau >= 1
    CHECK_THROWS_AS(admissible_B(b, 1.0, 1.0), BadParameter);      // gamma = 1
    CHECK_THROWS_AS(admissible_B(b, 1.4, 0.0), BadParameter);      // K = 0
}
