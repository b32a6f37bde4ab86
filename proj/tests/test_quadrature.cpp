#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperslender/quadrature.hpp"
#include "oracles.hpp"

using namespace hyperslender;

TEST_CASE("polynomials integrate exactly") {
    auto r = integrate_1d([](double x) { return x * x * x - 2.0 * x + 1.0; },
                          -1.0, 3.0);
    CHECK(r.value == doctest::Approx(20.0 - 8.0 + 4.0).epsilon(1e-14));
    CHECK(r.subdivisions == 0);
}

TEST_CASE("smooth transcendental integrand") {
    auto r = integrate_1d([](double x) { return std::exp(-x) * std::sin(5.0 * x); },
                          0.0, 10.0);
    // int e^{-x} sin(5x) = 5/26 - e^{-10}(sin 50 + 5 cos 50)/26
    const double expect =
        (5.0 - std::exp(-10.0) * (std::sin(50.0) + 5.0 * std::cos(50.0))) / 26.0;
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("kink requires subdivisions but converges") {
    auto r = integrate_1d([](double x) { return std::abs(x - 0.3141); }, 0.0, 1.0,
                          {1e-13, 1e-12, 4000});
    const double a = 0.3141;
    const double expect = (a * a + (1.0 - a) * (1.0 - a)) / 2.0;
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-11));
    CHECK(r.subdivisions > 0);
}

TEST_CASE("tolerance failure raises NoConvergence") {
    // 1/sqrt(x) is integrable but the budgeted bisection stalls at machine eps
    CHECK_THROWS_AS(integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0,
                                 1.0, {1e-15, 1e-15, 25}),
                    NoConvergence);
}

TEST_CASE("degenerate and invalid intervals") {
    CHECK(integrate_1d([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 1.0, 0.0),
                    BadParameter);
}

TEST_CASE("panel integration splits at breakpoints") {
    auto f = [](double x) { return std::abs(x); };
    const double v = integrate_panels(f, {-1.0, 0.0, 1.0});
    CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("slope integral H against closed forms") {
    const QuadratureConfig cfg{};
    BodyProfile lin = make_profile(ProfileFamily::linear, 1.0, 2.0);
    CHECK(H_of(lin, 0.1, 1.0, cfg) ==
          doctest::Approx(oracle::H_linear(1.0, 0.1, 1.0)).epsilon(1e-12));
    CHECK(H_of(lin, 0.1, 1.0, cfg) == doctest::Approx(0.99503719).epsilon(1e-8));

    BodyProfile sq = make_profile(ProfileFamily::power, 1.0, 3.0, 2.0);
    CHECK(H_of(sq, 0.25, 2.5, cfg) ==
          doctest::Approx(oracle::H_square(0.25, 2.5)).epsilon(1e-12));

    BodyProfile lg = make_profile(ProfileFamily::logarithmic, 1.0, 3.0);
    CHECK(H_of(lg, 0.2, 2.0, cfg) ==
          doctest::Approx(oracle::H_log(0.2, 2.0)).epsilon(1e-12));
}

TEST_CASE("area-slope integral M against closed forms") {
    BodyProfile lin = make_profile(ProfileFamily::linear, 1.0, 2.0);
    CHECK(M_of(lin, 0.1, 2.0) ==
          doctest::Approx(oracle::M_linear(1.0, 0.1, 2.0)).epsilon(1e-12));
    CHECK(M_of(lin, 0.1, 2.0) == doctest::Approx(1.9900744).epsilon(1e-7));

    BodyProfile sq = make_profile(ProfileFamily::power, 1.0, 1.5, 2.0);
    // frozen: int_0^1 2 t^3 / sqrt(1 + 4 t^2) dt = (sqrt(5) + 1)/12
    CHECK(M_of(sq, 1.0, 1.0) ==
          doctest::Approx(0.2696723314583158).epsilon(1e-12));
    CHECK(M_of(sq, 0.3, 1.2) ==
          doctest::Approx(oracle::M_square(0.3, 1.2)).epsilon(1e-12));
}

TEST_CASE("H and M vanish at zero and collapse at tau -> 0") {
    BodyProfile sq = make_profile(ProfileFamily::power, 1.0, 2.0, 2.0);
    CHECK(H_of(sq, 0.3, 0.0) == 0.0);
    CHECK(M_of(sq, 0.3, 0.0) == 0.0);
    // tau = 0 is not an UpstreamState value but the integrals accept it
    CHECK(H_of(sq, 0.0, 1.7) == doctest::Approx(1.7 * 1.7).epsilon(1e-12));
    CHECK(M_of(sq, 0.0, 1.7) ==
          doctest::Approx(std::pow(1.7, 4.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("H and M are nondecreasing on prefix grids") {
    BodyProfile lg = make_profile(ProfileFamily::logarithmic, 1.0, 5.0);
    std::vector<double> grid;
    for (int i = 0; i <= 64; ++i) grid.push_back(5.0 * i / 64.0);
    const auto H = H_grid(lg, 0.15, grid);
    const auto M = M_grid(lg, 0.15, grid);
    REQUIRE(H.size() == grid.size());
    for (size_t i = 1; i < grid.size(); ++i) {
        CHECK(H[i] >= H[i - 1]);
        CHECK(M[i] >= M[i - 1]);
    }
    CHECK(H.back() == doctest::Approx(oracle::H_log(0.15, 5.0)).epsilon(1e-12));
}

TEST_CASE("bump point values and gradient, frozen k=3 case") {
    TestFunction phi = make_bump(0.0, 0.0, 1.0, 1.0, 3);
    const BumpValue v = phi.eval(0.5, 0.0);
    CHECK(v.phi == doctest::Approx(0.421875).epsilon(1e-15));
    CHECK(v.dphi_dx == doctest::Approx(-1.6875).epsilon(1e-15));
    CHECK(v.dphi_dy == 0.0);
    CHECK(phi.eval(2.0, 0.0).phi == 0.0);
    CHECK(phi.eval(1.0, 0.0).phi == 0.0);
}

TEST_CASE("bump gradient matches central differences") {
    TestFunction phi = make_bump(0.3, -0.2, 0.7, 1.3, 4);
    const double h = 1e-6;
    for (double x : {0.1, 0.5, -0.3}) {
        for (double y : {0.0, -0.9, 0.6}) {
            const BumpValue v = phi.eval(x, y);
            const double fdx =
                (phi.eval(x + h, y).phi - phi.eval(x - h, y).phi) / (2.0 * h);
            const double fdy =
                (phi.eval(x, y + h).phi - phi.eval(x, y - h).phi) / (2.0 * h);
            CHECK(v.dphi_dx == doctest::Approx(fdx).epsilon(1e-7));
            CHECK(v.dphi_dy == doctest::Approx(fdy).epsilon(1e-7));
        }
    }
}

TEST_CASE("bump mass equals pi rx ry / (k+1)") {
    const TestFunction phi = make_bump(0.2, 0.4, 0.8, 0.5, 4);
    auto outer = [&](double x) {
        const double rho = phi.chord_halfwidth(x);
        if (rho <= 0.0) return 0.0;
        return integrate_1d([&](double y) { return phi.eval(x, y).phi; },
                            phi.y0 - rho, phi.y0 + rho)
            .value;
    };
    const double mass = integrate_1d(outer, phi.x_min(), phi.x_max()).value;
    const double expect = M_PI * 0.8 * 0.5 / 5.0;
    CHECK(mass == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("bump validation") {
    CHECK_THROWS_AS(make_bump(0.0, 0.0, 0.0, 1.0), BadParameter);
    CHECK_THROWS_AS(make_bump(0.0, 0.0, 1.0, -1.0), BadParameter);
    CHECK_THROWS_AS(make_bump(0.0, 0.0, 1.0, 1.0, 2), BadParameter);
    CHECK_NOTHROW(make_bump(0.0, 0.0, 1.0, 1.0, 3));
}

TEST_CASE("chord halfwidth") {
    TestFunction phi = make_bump(1.0, 2.0, 0.5, 0.25, 4);
    CHECK(phi.chord_halfwidth(1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(phi.chord_halfwidth(1.5) == doctest::Approx(0.0));
    CHECK(phi.chord_halfwidth(1.6) < 0.0);
}

TEST_CASE("deterministic results across calls") {
    auto f = [](double x) { return std::sin(3.0 * x) / (1.1 + std::cos(x)); };
    const double a = integrate_1d(f, 0.0, 7.0).value;
    const double b = integrate_1d(f, 0.0, 7.0).value;
    CHECK(a == b);
}
