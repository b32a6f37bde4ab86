#pragma once

#include <functional>
#include <memory>
#include <string>

#include "hyperslender/errors.hpp"
#include "hyperslender/geometry.hpp"
#include "hyperslender/quadrature.hpp"

namespace hyperslender {

/// Which physical setting a measure lives in. The *_scaled flavors use the
/// similarity variables; the axisym flavors integrate with the radius factors
/// of cylindrical coordinates (r dx dr for the volume part, the curve radius
/// g(x) for the boundary part).
enum class Flavor { planar, planar_scaled, axisym, axisym_scaled };

enum class Deriv { none, d_x, d_y };

const char* flavor_name(Flavor f);
bool flavor_is_axisym(Flavor f);
bool flavor_is_scaled(Flavor f);

/// Truncated flow region {0 < x < x_max, g(x) < y < y_max} past the body
/// curve y = g(x) = curve_scale * profile(x). In the axisym flavors y is the
/// radial coordinate.
struct RegionSpec {
    enum class Kind { planar, axisym };
    Kind kind = Kind::planar;
    std::shared_ptr<const BodyProfile> profile;
    double curve_scale = 1.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double g(double x) const { return curve_scale * profile->value(x); }
    double dg(double x) const { return curve_scale * profile->slope(x); }
};

/// y_max <= 0 picks the default window height g(x_max) + max(1, 0.4 x_max);
/// x_max <= 0 picks the profile's full domain.
RegionSpec make_region(RegionSpec::Kind kind,
                       std::shared_ptr<const BodyProfile> profile,
                       double curve_scale, double x_max = 0.0,
                       double y_max = 0.0);

/// A measure with an absolutely continuous part ac_density(x,y) dx dy on the
/// region and a weighted line measure dirac_weight(x) concentrated on the
/// curve. Either part may be absent (null function). Pairing conventions:
///
///   planar  <m, psi> = iint_region ac psi dx dy
///                      + int w(x) psi(x, g(x)) sqrt(1 + g'(x)^2) dx
///   axisym  <m, psi> = iint_region ac psi y dx dy
///                      + int w(x) psi(x, g(x)) g(x) sqrt(1 + g'(x)^2) dx
///
/// radial_area=false drops the volume factor y in the axisym flavors (used by
/// the zeroth-order pressure term of the radial momentum balance).
/// dirac_arclength=false drops the sqrt(1 + g'^2) factor (used by the surface
/// pressure force, whose normal direction cancels it).
struct RadonMeasure {
    RadonMeasure(Flavor flavor, RegionSpec region,
                 std::function<double(double, double)> ac_density,
                 std::function<double(double)> dirac_weight,
                 bool dirac_arclength = true);
    RadonMeasure(Flavor flavor, RegionSpec region,
                 std::function<double(double, double)> ac_density,
                 std::function<double(double)> dirac_weight,
                 bool dirac_arclength, bool radial_area);

    Flavor flavor;
    RegionSpec region;
    std::function<double(double, double)> ac_density;
    std::function<double(double)> dirac_weight;
    bool dirac_arclength = true;
    bool radial_area = false;
};

/// Uniform-by-constant helpers.
RadonMeasure ac_measure(Flavor flavor, RegionSpec region, double constant,
                        bool radial_area_override_off = false);
RadonMeasure dirac_measure(Flavor flavor, RegionSpec region,
                           std::function<double(double)> weight,
                           bool arclength = true);

/// Throws SupportOutsideWindow when the bump sticks out past the far edges
/// x = x_max or y = y_max (upstream of x = 0 and below the curve are fine:
/// integration clips there and the inflow term covers the upstream side).
void check_support(const RegionSpec& region, const TestFunction& phi);

/// <m, phi>, <m, dphi/dx>, or <m, dphi/dy> depending on deriv.
double pair(const RadonMeasure& m, const TestFunction& phi, Deriv deriv,
            const QuadratureConfig& cfg = {});

/// Total-variation counterpart: same integrals with |density| and |test
/// factor|. Used as the scale in normalized residuals.
double pair_abs(const RadonMeasure& m, const TestFunction& phi, Deriv deriv,
                const QuadratureConfig& cfg = {});

/// Contribution of the uniform upstream state on {x < 0}: the x-flux constant
/// c times the trace integral of phi along the inflow axis,
///   int c phi(0, y) [y] dy over y in (max(0, chord bottom), chord top).
double inflow_term(double c, const TestFunction& phi, Flavor flavor,
                   const QuadratureConfig& cfg = {});

struct TauFactorResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
};

/// Scaling identity tying the dimensional density measure to the similarity
/// variables. With phi a bump in scaled coordinates and psi(x, y) =
/// phi(x, y/tau):
///   planar  <rho_dim, psi>/rho_inf
///             = tau * [ iint_scaled phi + int (w_rho/(tau rho_inf))
///                       phi(x, b) sqrt(1 + tau^2 b'^2) dx ]
///   axisym  same with factor tau^2, volume element r dx dr, and curve radius
///           f(x) on the boundary integral.
/// rho_dim must be a dimensional-flavor measure whose region has
/// curve_scale = tau.
TauFactorResult tau_factor_pairing(const RadonMeasure& rho_dim, double rho_inf,
                                   const TestFunction& phi_scaled,
                                   const QuadratureConfig& cfg = {});

/// Debug serialization: flavor, curve, flags, and a sampled weight table.
std::string describe_measure(const RadonMeasure& m, int samples = 9);

} // namespace hyperslender
