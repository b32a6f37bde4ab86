#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperslender/errors.hpp"

namespace hyperslender {

enum class ProfileFamily { linear, power, exponential, logarithmic, sum };

/// One primitive addend of a body profile:
///   linear       b(x) = a x
///   power        b(x) = a x^p,  p in {1} u [2, inf)
///   exponential  b(x) = a (e^x - 1)
///   logarithmic  b(x) = a ln(1 + x)
struct ProfileTerm {
    ProfileFamily family = ProfileFamily::linear;
    double a = 1.0;
    double p = 1.0; // power family only
};

struct ProfileEval {
    double b;   // height
    double db;  // slope
    double ddb; // curvature
};

/// Strictly increasing body generator b on [0, domain_end] with b(0) = 0.
/// Stored as a sum of primitive terms; single-family profiles hold one term.
class BodyProfile {
public:
    /// Validates coefficients, then checks b' > 0 at `monotone_grid` points of
    /// (0, domain_end]. b(0) = 0 holds for every family by construction.
    static BodyProfile make(std::vector<ProfileTerm> terms, double domain_end,
                            int monotone_grid = 2048);

    ProfileEval eval(double x) const; // throws OutOfDomain outside [0, domain_end]

    double value(double x) const { return eval(x).b; }
    double slope(double x) const { return eval(x).db; }
    double curvature(double x) const { return eval(x).ddb; }

    double domain_end() const { return domain_end_; }
    const std::vector<ProfileTerm>& terms() const { return terms_; }

    /// Canonical one-line form usable as CLI input, e.g. "power:a=1,p=2".
    std::string describe() const;

private:
    BodyProfile() = default;
    std::vector<ProfileTerm> terms_;
    double domain_end_ = 0.0;
};

/// Convenience wrapper for single-family profiles.
BodyProfile make_profile(ProfileFamily family, double a, double domain_end,
                         double p = 1.0, int monotone_grid = 2048);

/// Parses the CLI grammar:
///   linear:a=1 | power:a=1,p=2 | exp:a=1 | log:a=1 |
///   sum:<primitive>+<primitive>+...
BodyProfile parse_profile(std::string_view spec, double domain_end,
                          int monotone_grid = 2048);

struct AdmissibilityVerdict {
    bool admissible = false;
    double worst_margin = 0.0;
    double worst_x = 0.0;
};

/// 2-D dimensional body: (1+t^2 b'^2)^{3/2}/(g K^2) + b'' H + b'^2 sqrt(1+t^2 b'^2) > 0
/// with H(x) the slope integral from the quadrature module (H(0) = 0, so the
/// curvature term drops at the tip).
AdmissibilityVerdict admissible_A(const BodyProfile& profile, double tau,
                                  double gamma, double K, int grid_points = 2048);

/// 2-D scaled body: 1/(g K^2) + b'^2 + b b'' > 0.
AdmissibilityVerdict admissible_B(const BodyProfile& profile, double gamma,
                                  double K, int grid_points = 2048);

/// Axisymmetric dimensional body:
/// f (1+t^2 f'^2)^{3/2} + g K^2 f'' M + sqrt(1+t^2 f'^2) f f'^2 >= 0
/// (equality allowed; the expression vanishes identically at the tip).
AdmissibilityVerdict admissible_A3(const BodyProfile& profile, double tau,
                                   double gamma, double K, int grid_points = 2048);

/// Axisymmetric scaled body: 2f + g K^2 (2 f f'^2 + f^2 f'') > 0 for x > 0;
/// sign-equivalent to positivity of the scaled surface pressure.
AdmissibilityVerdict admissible_B3(const BodyProfile& profile, double gamma,
                                   double K, int grid_points = 2048);

} // namespace hyperslender
