#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperslender/flow_state.hpp"

using namespace hyperslender;

TEST_CASE("upstream constants for K=1, tau=0.1, gamma=1.4") {
    const UpstreamState s = upstream(1.0, 0.1, 1.4);
    CHECK(s.p_inf == doctest::Approx(0.01 / 1.4).epsilon(1e-15));
    CHECK(s.E_inf == doctest::Approx(0.5 * (1.0 + 0.02 / 0.4)).epsilon(1e-15));
    // Mach number K/tau = 10: p = rho u^2/(gamma M^2)
    CHECK(s.p_inf == doctest::Approx(1.0 / (1.4 * 100.0)).epsilon(1e-15));
}

TEST_CASE("scaled upstream constants") {
    const ScaledUpstreamState s = scaled_upstream(1.0, 1.4);
    CHECK(s.p_bar_inf == doctest::Approx(1.0 / 1.4).epsilon(1e-15));
    CHECK(s.E_bar_inf == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(upstream(0.0, 0.1, 1.4), BadParameter);
    CHECK_THROWS_AS(upstream(1.0, 0.0, 1.4), BadParameter);
    CHECK_THROWS_AS(upstream(1.0, 1.0, 1.4), BadParameter);
    CHECK_THROWS_AS(upstream(1.0, 0.1, 1.0), BadParameter);
    CHECK_THROWS_AS(upstream(1.0, 0.1, 1.4, -1.0), BadParameter);
    CHECK_THROWS_AS(upstream(1.0, 0.1, 1.4, 1.0, 0.0), BadParameter);
    CHECK_THROWS_AS(scaled_upstream(-2.0, 1.4), BadParameter);
}

TEST_CASE("pressure closure consistent with upstream data") {
    const UpstreamState s = upstream(1.3, 0.2, 1.4, 2.0, 3.0);
    // at upstream conditions (u, v) = (u_inf, 0), E = E_inf the closure
    // must reproduce p_inf
    const double p = pressure(s.gamma, s.rho_inf, s.u_inf, 0.0, s.E_inf);
    CHECK(p == doctest::Approx(s.p_inf).epsilon(1e-14));
}

TEST_CASE("scaled pressure closure consistent with scaled upstream data") {
    const ScaledUpstreamState s = scaled_upstream(0.8, 1.3);
    // scaled upstream state: rho_bar=1, u_bar=0, v_bar=0, E_bar=E_bar_inf
    const double p = scaled_pressure(s.gamma, 1.0, 0.0, 0.0, s.E_bar_inf);
    CHECK(p == doctest::Approx(s.p_bar_inf).epsilon(1e-14));
}

TEST_CASE("scaling round trip at the upstream state") {
    const UpstreamState s = upstream(1.0, 0.05, 1.4, 1.7, 2.9);
    const ScaledUpstreamState sc = scaled_upstream(s.K, s.gamma);
    const ScaledFields f = scale_fields(s, s.u_inf, 0.0, s.E_inf, s.p_inf);
    CHECK(f.u_bar == doctest::Approx(0.0));
    CHECK(f.v_bar == doctest::Approx(0.0));
    CHECK(f.E_bar == doctest::Approx(sc.E_bar_inf).epsilon(1e-12));
    CHECK(f.p_bar == doctest::Approx(sc.p_bar_inf).epsilon(1e-12));
}

TEST_CASE("scaled closure commutes with field scaling") {
    // p(u, v, E) computed dimensionally then scaled equals the scaled
    // closure applied to the scaled fields, for rho = rho_inf
    const UpstreamState s = upstream(1.2, 0.15, 1.4);
    const double u = s.u_inf * (1.0 - 0.7 * s.tau * s.tau);
    const double v = 0.4 * s.u_inf * s.tau;
    const double E = s.E_inf * 1.02;
    const double p = pressure(s.gamma, s.rho_inf, u, v, E);
    const ScaledFields f = scale_fields(s, u, v, E, p);
    const double p_bar =
        scaled_pressure(s.gamma, 1.0, f.u_bar, f.v_bar, f.E_bar);
    // the scaled closure drops an O(tau^2) remainder:
    // E - (u^2+v^2)/2 = (tau^2 u_inf^2/2)(E_bar - 2 u_bar - v_bar^2) + O(tau^4)
    CHECK(f.p_bar == doctest::Approx(p_bar).epsilon(2.0 * s.tau * s.tau));
}

TEST_CASE("point scaling stretches the transverse coordinate") {
    const UpstreamState s = upstream(1.0, 0.25, 1.4);
    const ScaledPoint q = scale_point(s, 0.7, 0.1);
    CHECK(q.x_bar == 0.7);
    CHECK(q.y_bar == doctest::Approx(0.4).epsilon(1e-15));
}
