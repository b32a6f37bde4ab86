// Closed-form reference values for the built-in profile families, derived by
// hand calculus and used to cross-check the adaptive quadrature. Independent
// of the library internals on purpose.
#pragma once

#include <cmath>
#include <functional>

namespace oracle {

// Slope integral int_0^x b' / sqrt(1 + tau^2 b'^2) dt.
inline double H_linear(double a, double tau, double x) {
    return a * x / std::sqrt(1.0 + tau * tau * a * a);
}
inline double H_square(double tau, double x) {
    // b = x^2: int 2t/sqrt(1+4 tau^2 t^2) = (sqrt(1+4 tau^2 x^2) - 1)/(2 tau^2)
    const double t2 = tau * tau;
    return (std::sqrt(1.0 + 4.0 * t2 * x * x) - 1.0) / (2.0 * t2);
}
inline double H_log(double tau, double x) {
    // b = ln(1+x): int dt / sqrt((1+t)^2 + tau^2)
    return std::asinh((1.0 + x) / tau) - std::asinh(1.0 / tau);
}

// Area-slope integral int_0^x f f' / sqrt(1 + tau^2 f'^2) dt.
inline double M_linear(double a, double tau, double x) {
    return a * a * x * x / (2.0 * std::sqrt(1.0 + tau * tau * a * a));
}
inline double M_square(double tau, double x) {
    // f = x^2, substitution u = 1 + 4 tau^2 t^2
    const double t4 = tau * tau * tau * tau;
    const double U = 1.0 + 4.0 * tau * tau * x * x;
    return ((2.0 / 3.0) * (std::pow(U, 1.5) - 1.0) - 2.0 * (std::sqrt(U) - 1.0)) /
           (16.0 * t4);
}

// int_0^x b b' b'' dt for the built-in families.
inline double J_power(double a, double p, double x) {
    return a * a * a * p * p * (p - 1.0) * std::pow(x, 3.0 * p - 2.0) /
           (3.0 * p - 2.0);
}
inline double J_exp(double a, double x) {
    const double e = std::exp(x);
    return a * a * a * (e * e * e / 3.0 - e * e / 2.0 + 1.0 / 6.0);
}
inline double J_log(double a, double x) {
    const double L = std::log1p(x);
    const double V = 1.0 + x;
    return -a * a * a * (0.25 - (2.0 * L + 1.0) / (4.0 * V * V));
}

// int_0^x f^2 f' f'' dt.
inline double J3_power(double a, double p, double x) {
    const double a4 = a * a * a * a;
    return a4 * p * p * (p - 1.0) * std::pow(x, 4.0 * p - 2.0) / (4.0 * p - 2.0);
}
inline double J3_exp(double a, double x) {
    const double e = std::exp(x);
    const double a4 = a * a * a * a;
    return a4 * (std::pow(e, 4.0) / 4.0 - 2.0 * e * e * e / 3.0 + e * e / 2.0 -
                 1.0 / 12.0);
}
inline double J3_log(double a, double x) {
    const double L = std::log1p(x);
    const double V = 1.0 + x;
    const double a4 = a * a * a * a;
    return -a4 * (0.25 - (2.0 * L * L + 2.0 * L + 1.0) / (4.0 * V * V));
}

// Composite Simpson reference integrator for cross-checks.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n = 4000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace oracle
