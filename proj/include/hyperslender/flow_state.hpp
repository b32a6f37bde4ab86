#pragma once

#include <cmath>

#include "hyperslender/errors.hpp"

namespace hyperslender {

/// Uniform incoming flow of a polytropic gas, dimensional form. The energy
/// variable is total enthalpy per unit mass, E = q^2/2 + c^2/(gamma - 1),
/// which is what the steady energy flux transports; hence the closure
///   p = (gamma - 1)/gamma * rho * (E - q^2/2).
struct UpstreamState {
    double rho_inf = 1.0;
    double u_inf = 1.0;
    double gamma = 1.4;
    double tau = 0.1;   // slenderness ratio
    double K = 1.0;     // similarity parameter, K = M_inf * tau
    double E_inf = 0.0;
    double p_inf = 0.0;
};

/// Upstream data of the scaled (hypersonic small-disturbance) system. Only
/// gamma and K survive the scaling.
struct ScaledUpstreamState {
    double gamma = 1.4;
    double K = 1.0;
    double E_bar_inf = 0.0;
    double p_bar_inf = 0.0;
};

inline UpstreamState upstream(double K, double tau, double gamma,
                              double rho_inf = 1.0, double u_inf = 1.0) {
    if (!(K > 0.0)) throw BadParameter("similarity parameter K must be > 0");
    if (!(tau > 0.0) || !(tau < 1.0))
        throw BadParameter("slenderness ratio tau must lie in (0, 1)");
    if (!(gamma > 1.0)) throw BadParameter("gamma must be > 1");
    if (!(rho_inf > 0.0)) throw BadParameter("upstream density must be > 0");
    if (!(u_inf > 0.0)) throw BadParameter("upstream speed must be > 0");
    UpstreamState s;
    s.rho_inf = rho_inf;
    s.u_inf = u_inf;
    s.gamma = gamma;
    s.tau = tau;
    s.K = K;
    const double t2 = tau * tau;
    s.p_inf = rho_inf * u_inf * u_inf * t2 / (gamma * K * K);
    s.E_inf = 0.5 * u_inf * u_inf * (1.0 + 2.0 * t2 / ((gamma - 1.0) * K * K));
    return s;
}

inline ScaledUpstreamState scaled_upstream(double K, double gamma) {
    if (!(K > 0.0)) throw BadParameter("similarity parameter K must be > 0");
    if (!(gamma > 1.0)) throw BadParameter("gamma must be > 1");
    ScaledUpstreamState s;
    s.gamma = gamma;
    s.K = K;
    s.p_bar_inf = 1.0 / (gamma * K * K);
    s.E_bar_inf = 2.0 / ((gamma - 1.0) * K * K);
    return s;
}

/// p = (gamma - 1)/gamma * rho * (E - (u^2 + v^2)/2).
inline double pressure(double gamma, double rho, double u, double v, double E) {
    return (gamma - 1.0) / gamma * rho * (E - 0.5 * (u * u + v * v));
}

/// Scaled closure: p_bar = (gamma - 1)/(2 gamma) * rho_bar * (E_bar - 2 u_bar - v_bar^2).
inline double scaled_pressure(double gamma, double rho_bar, double u_bar,
                              double v_bar, double E_bar) {
    return (gamma - 1.0) / (2.0 * gamma) * rho_bar *
           (E_bar - 2.0 * u_bar - v_bar * v_bar);
}

struct ScaledPoint {
    double x_bar = 0.0;
    double y_bar = 0.0;
};

/// (x, y) -> (x, y / tau): the transverse stretch taking the thin physical
/// region to an O(1) one.
inline ScaledPoint scale_point(const UpstreamState& up, double x, double y) {
    return {x, y / up.tau};
}

struct ScaledFields {
    double u_bar = 0.0;
    double v_bar = 0.0;
    double E_bar = 0.0;
    double p_bar = 0.0;
};

/// Velocity, energy, and pressure in similarity variables:
///   u_bar = (u - u_inf)/(u_inf tau^2),  v_bar = v/(u_inf tau),
///   E_bar = (2E - u_inf^2)/(u_inf^2 tau^2),  p_bar = p/(rho_inf u_inf^2 tau^2).
inline ScaledFields scale_fields(const UpstreamState& up, double u, double v,
                                 double E, double p) {
    const double t2 = up.tau * up.tau;
    ScaledFields f;
    f.u_bar = (u - up.u_inf) / (up.u_inf * t2);
    f.v_bar = v / (up.u_inf * up.tau);
    f.E_bar = (2.0 * E - up.u_inf * up.u_inf) / (up.u_inf * up.u_inf * t2);
    f.p_bar = p / (up.rho_inf * up.u_inf * up.u_inf * t2);
    return f;
}

} // namespace hyperslender
