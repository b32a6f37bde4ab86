#pragma once

#include <functional>
#include <vector>

#include "hyperslender/errors.hpp"
#include "hyperslender/geometry.hpp"

namespace hyperslender {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b]. Splits the interval with
/// the largest error estimate until
///   sum(err) <= max(abs_tol, rel_tol * |sum(value)|),
/// throwing NoConvergence past max_subdivisions. Deterministic: ties broken by
/// insertion order, final sum accumulated left to right.
IntegralResult integrate_1d(const std::function<double(double)>& g, double a,
                            double b, const QuadratureConfig& cfg = {});

/// integrate_1d summed over the panels defined by sorted breakpoints
/// (a = p0 < p1 < ... < pn = b). Degenerate panels are skipped.
double integrate_panels(const std::function<double(double)>& g,
                        const std::vector<double>& breakpoints,
                        const QuadratureConfig& cfg = {});

/// Slope integral of a 2-D body: H(x) = int_0^x b'/sqrt(1 + tau^2 b'^2) dt.
/// H(0) = 0 exactly; tau = 0 collapses to b(x).
double H_of(const BodyProfile& profile, double tau, double x,
            const QuadratureConfig& cfg = {});

/// Area-slope integral of an axisymmetric body:
/// M(x) = int_0^x f f'/sqrt(1 + tau^2 f'^2) dt; tau = 0 collapses to f^2/2.
double M_of(const BodyProfile& profile, double tau, double x,
            const QuadratureConfig& cfg = {});

/// Cumulative H (resp. M) along an increasing grid starting at grid[0] = 0:
/// prefix sums of per-segment integrals, one adaptive pass per segment.
std::vector<double> H_grid(const BodyProfile& profile, double tau,
                           const std::vector<double>& grid,
                           const QuadratureConfig& cfg = {});
std::vector<double> M_grid(const BodyProfile& profile, double tau,
                           const std::vector<double>& grid,
                           const QuadratureConfig& cfg = {});

struct BumpValue {
    double phi = 0.0;
    double dphi_dx = 0.0;
    double dphi_dy = 0.0;
};

/// Compactly supported polynomial bump
///   phi(x, y) = max(0, 1 - s)^k,
///   s = ((x - x0)/rx)^2 + ((y - y0)/ry)^2,
/// with closed-form gradient; k >= 3 keeps the gradient C^1 across the
/// support boundary.
struct TestFunction {
    double x0 = 0.0;
    double y0 = 0.0;
    double rx = 1.0;
    double ry = 1.0;
    int k = 4;
    double amplitude = 1.0;

    BumpValue eval(double x, double y) const;

    /// Half-width of the support chord {y : phi(x, y) > 0} at abscissa x;
    /// negative when x is outside the support strip.
    double chord_halfwidth(double x) const;

    double x_min() const { return x0 - rx; }
    double x_max() const { return x0 + rx; }
    double y_min() const { return y0 - ry; }
    double y_max() const { return y0 + ry; }
};

/// Validates radii > 0 and k >= 3.
TestFunction make_bump(double x0, double y0, double rx, double ry, int k = 4);

inline BumpValue eval_bump(const TestFunction& phi, double x, double y) {
    return phi.eval(x, y);
}

} // namespace hyperslender
