#include "hyperslender/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace hyperslender {

const char* flavor_name(Flavor f) {
    switch (f) {
    case Flavor::planar: return "planar";
    case Flavor::planar_scaled: return "planar_scaled";
    case Flavor::axisym: return "axisym";
    case Flavor::axisym_scaled: return "axisym_scaled";
    }
    return "?";
}

bool flavor_is_axisym(Flavor f) {
    return f == Flavor::axisym || f == Flavor::axisym_scaled;
}

bool flavor_is_scaled(Flavor f) {
    return f == Flavor::planar_scaled || f == Flavor::axisym_scaled;
}

RegionSpec make_region(RegionSpec::Kind kind,
                       std::shared_ptr<const BodyProfile> profile,
                       double curve_scale, double x_max, double y_max) {
    if (!profile) throw BadParameter("region needs a body profile");
    if (!(curve_scale > 0.0))
        throw BadParameter("region curve_scale must be positive");
    RegionSpec r;
    r.kind = kind;
    r.profile = std::move(profile);
    r.curve_scale = curve_scale;
    r.x_max = x_max <= 0.0 ? r.profile->domain_end() : x_max;
    if (r.x_max > r.profile->domain_end())
        throw BadParameter("region x_max exceeds the profile domain");
    const double top = r.g(r.x_max);
    r.y_max = y_max <= 0.0 ? top + std::max(1.0, 0.4 * r.x_max) : y_max;
    if (!(r.y_max > top))
        throw BadParameter("region y_max must clear the curve top");
    return r;
}

RadonMeasure::RadonMeasure(Flavor flavor_, RegionSpec region_,
                           std::function<double(double, double)> ac,
                           std::function<double(double)> dirac,
                           bool dirac_arclength_)
    : RadonMeasure(flavor_, std::move(region_), std::move(ac), std::move(dirac),
                   dirac_arclength_, flavor_is_axisym(flavor_)) {}

RadonMeasure::RadonMeasure(Flavor flavor_, RegionSpec region_,
                           std::function<double(double, double)> ac,
                           std::function<double(double)> dirac,
                           bool dirac_arclength_, bool radial_area_)
    : flavor(flavor_), region(std::move(region_)), ac_density(std::move(ac)),
      dirac_weight(std::move(dirac)), dirac_arclength(dirac_arclength_),
      radial_area(radial_area_) {
    if (!region.profile) throw BadParameter("measure region needs a profile");
    const bool want_axisym = flavor_is_axisym(flavor);
    const bool have_axisym = region.kind == RegionSpec::Kind::axisym;
    if (want_axisym != have_axisym)
        throw FlavorMismatch(std::string("measure flavor ") + flavor_name(flavor) +
                             " does not match the region kind");
    if (radial_area && !want_axisym)
        throw FlavorMismatch("radial area element only makes sense for axisym flavors");
}

RadonMeasure ac_measure(Flavor flavor, RegionSpec region, double constant,
                        bool radial_area_override_off) {
    const bool radial = flavor_is_axisym(flavor) && !radial_area_override_off;
    return RadonMeasure(
        flavor, std::move(region),
        [constant](double, double) { return constant; }, nullptr, true, radial);
}

RadonMeasure dirac_measure(Flavor flavor, RegionSpec region,
                           std::function<double(double)> weight,
                           bool arclength) {
    return RadonMeasure(flavor, std::move(region), nullptr, std::move(weight),
                        arclength);
}

void check_support(const RegionSpec& region, const TestFunction& phi) {
    std::ostringstream os;
    if (phi.x_max() > region.x_max) {
        os << "bump support reaches x = " << phi.x_max()
           << " past the window edge x_max = " << region.x_max;
        throw SupportOutsideWindow(os.str());
    }
    if (phi.y_max() > region.y_max) {
        os << "bump support reaches y = " << phi.y_max()
           << " past the window edge y_max = " << region.y_max;
        throw SupportOutsideWindow(os.str());
    }
}

namespace {

double select(const BumpValue& v, Deriv d) {
    switch (d) {
    case Deriv::none: return v.phi;
    case Deriv::d_x: return v.dphi_dx;
    case Deriv::d_y: return v.dphi_dy;
    }
    return 0.0;
}

// Scan [a, b] in n steps for sign changes of fn and refine each bracket by
// bisection. Nodes that hit zero exactly are taken as-is.
template <class F>
void scan_roots(F&& fn, double a, double b, int n, std::vector<double>& out) {
    if (!(b > a)) return;
    double x_prev = a;
    double f_prev = fn(a);
    for (int i = 1; i <= n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / n;
        const double fx = fn(x);
        if (f_prev == 0.0) {
            out.push_back(x_prev);
        } else if (fx != 0.0 && std::signbit(fx) != std::signbit(f_prev)) {
            double lo = x_prev, hi = x, flo = f_prev;
            for (int it = 0; it < 90; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const double fm = fn(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(fm) == std::signbit(flo)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = fx;
    }
    if (f_prev == 0.0) out.push_back(b);
}

std::vector<double> panel_breaks(const RadonMeasure& m, const TestFunction& phi,
                                 Deriv d, bool absolute, double xa, double xb) {
    std::vector<double> breaks{xa, xb};
    const RegionSpec& rg = m.region;
    auto above_bottom = [&](double x) {
        const double rho = phi.chord_halfwidth(x);
        return rg.g(x) - (phi.y0 - std::max(rho, 0.0));
    };
    auto above_top = [&](double x) {
        const double rho = phi.chord_halfwidth(x);
        return rg.g(x) - (phi.y0 + std::max(rho, 0.0));
    };
    scan_roots(above_bottom, xa, xb, 128, breaks);
    scan_roots(above_top, xa, xb, 128, breaks);
    if (absolute) {
        if (d == Deriv::d_x && phi.x0 > xa && phi.x0 < xb)
            breaks.push_back(phi.x0);
        if (d == Deriv::d_y)
            scan_roots([&](double x) { return rg.g(x) - phi.y0; }, xa, xb, 128,
                       breaks);
    }
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> out;
    const double merge_tol = 1e-13 * (xb - xa);
    for (double x : breaks) {
        if (x < xa || x > xb) continue;
        if (out.empty() || x - out.back() > merge_tol) out.push_back(x);
    }
    if (out.size() < 2) out = {xa, xb};
    out.front() = xa;
    out.back() = xb;
    return out;
}

double pair_impl(const RadonMeasure& m, const TestFunction& phi, Deriv d,
                 const QuadratureConfig& cfg, bool absolute) {
    check_support(m.region, phi);
    const double xa = std::max(0.0, phi.x_min());
    const double xb = phi.x_max();
    if (xb <= xa) return 0.0;

    const std::vector<double> breaks = panel_breaks(m, phi, d, absolute, xa, xb);
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.abs_tol = 0.01 * cfg.abs_tol;
    inner_cfg.rel_tol = 0.01 * cfg.rel_tol;

    double total = 0.0;
    const RegionSpec& rg = m.region;

    if (m.ac_density) {
        auto outer = [&](double x) {
            const double rho = phi.chord_halfwidth(x);
            if (rho <= 0.0) return 0.0;
            const double lo = std::max(rg.g(x), phi.y0 - rho);
            const double hi = phi.y0 + rho;
            if (lo >= hi) return 0.0;
            std::vector<double> ybreaks{lo, hi};
            if (absolute && d == Deriv::d_y && phi.y0 > lo && phi.y0 < hi)
                ybreaks.insert(ybreaks.begin() + 1, phi.y0);
            auto inner = [&](double y) {
                double density = m.ac_density(x, y);
                double test = select(phi.eval(x, y), d);
                if (absolute) {
                    density = std::abs(density);
                    test = std::abs(test);
                }
                const double area = m.radial_area ? y : 1.0;
                return density * test * area;
            };
            return integrate_panels(inner, ybreaks, inner_cfg);
        };
        total += integrate_panels(outer, breaks, cfg);
    }

    if (m.dirac_weight) {
        const bool radial = flavor_is_axisym(m.flavor);
        auto line = [&](double x) {
            const double gx = rg.g(x);
            double w = m.dirac_weight(x);
            double test = select(phi.eval(x, gx), d);
            if (absolute) {
                w = std::abs(w);
                test = std::abs(test);
            }
            double factor = 1.0;
            if (m.dirac_arclength) {
                const double dgx = rg.dg(x);
                factor *= std::sqrt(1.0 + dgx * dgx);
            }
            if (radial) factor *= gx;
            return w * test * factor;
        };
        total += integrate_panels(line, breaks, cfg);
    }

    return total;
}

} // namespace

double pair(const RadonMeasure& m, const TestFunction& phi, Deriv deriv,
            const QuadratureConfig& cfg) {
    return pair_impl(m, phi, deriv, cfg, false);
}

double pair_abs(const RadonMeasure& m, const TestFunction& phi, Deriv deriv,
                const QuadratureConfig& cfg) {
    return pair_impl(m, phi, deriv, cfg, true);
}

double inflow_term(double c, const TestFunction& phi, Flavor flavor,
                   const QuadratureConfig& cfg) {
    if (c == 0.0) return 0.0;
    if (phi.x_min() >= 0.0 || phi.x_max() <= 0.0) return 0.0;
    const double rho = phi.chord_halfwidth(0.0);
    if (rho <= 0.0) return 0.0;
    const double lo = std::max(0.0, phi.y0 - rho);
    const double hi = phi.y0 + rho;
    if (lo >= hi) return 0.0;
    const bool radial = flavor_is_axisym(flavor);
    auto f = [&](double y) {
        const double v = phi.eval(0.0, y).phi;
        return c * v * (radial ? y : 1.0);
    };
    return integrate_1d(f, lo, hi, cfg).value;
}

TauFactorResult tau_factor_pairing(const RadonMeasure& rho_dim, double rho_inf,
                                   const TestFunction& phi_scaled,
                                   const QuadratureConfig& cfg) {
    if (flavor_is_scaled(rho_dim.flavor))
        throw FlavorMismatch("tau_factor_pairing expects a dimensional-flavor "
                             "density measure");
    if (!(rho_inf > 0.0)) throw BadParameter("rho_inf must be positive");
    const double tau = rho_dim.region.curve_scale;
    if (!(tau > 0.0) || !(tau < 1.0))
        throw BadParameter("dimensional region curve_scale must be tau in (0, 1)");

    const bool axisym = flavor_is_axisym(rho_dim.flavor);

    // Dimensional-side test function psi(x, y) = phi(x, y/tau).
    TestFunction psi = phi_scaled;
    psi.y0 = tau * phi_scaled.y0;
    psi.ry = tau * phi_scaled.ry;

    TauFactorResult res;
    res.lhs = pair(rho_dim, psi, Deriv::none, cfg) / rho_inf;

    RegionSpec scaled_region = rho_dim.region;
    scaled_region.curve_scale = 1.0;
    scaled_region.y_max = rho_dim.region.y_max / tau;
    const Flavor scaled_flavor =
        axisym ? Flavor::axisym_scaled : Flavor::planar_scaled;

    const RadonMeasure unit_ac = ac_measure(scaled_flavor, scaled_region, 1.0);

    // Boundary part: weight w_rho/(tau rho_inf) against the *dimensional*
    // arclength element, folded into the weight since the curve here is the
    // scaled one.
    auto w = rho_dim.dirac_weight;
    std::shared_ptr<const BodyProfile> prof = scaled_region.profile;
    const double t2 = tau * tau;
    RadonMeasure boundary = dirac_measure(
        scaled_flavor, scaled_region,
        [w, prof, rho_inf, tau, t2](double x) {
            const double wv = w ? w(x) : 0.0;
            const double db = prof->slope(x);
            return wv / (tau * rho_inf) * std::sqrt(1.0 + t2 * db * db);
        },
        false);

    const double bracket = pair(unit_ac, phi_scaled, Deriv::none, cfg) +
                           pair(boundary, phi_scaled, Deriv::none, cfg);
    res.rhs = (axisym ? tau * tau : tau) * bracket;
    const double scale = std::max(std::abs(res.lhs), std::abs(res.rhs));
    res.rel_err = scale > 1e-300 ? std::abs(res.lhs - res.rhs) / scale : 0.0;
    return res;
}

std::string describe_measure(const RadonMeasure& m, int samples) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"flavor\":\"" << flavor_name(m.flavor) << "\""
       << ",\"curve\":\"" << m.region.profile->describe() << "\""
       << ",\"curve_scale\":" << m.region.curve_scale
       << ",\"x_max\":" << m.region.x_max << ",\"y_max\":" << m.region.y_max
       << ",\"has_ac\":" << (m.ac_density ? "true" : "false")
       << ",\"has_dirac\":" << (m.dirac_weight ? "true" : "false")
       << ",\"dirac_arclength\":" << (m.dirac_arclength ? "true" : "false")
       << ",\"radial_area\":" << (m.radial_area ? "true" : "false");
    if (m.dirac_weight && samples > 1) {
        os << ",\"dirac_samples\":[";
        for (int i = 0; i < samples; ++i) {
            const double x = m.region.x_max * static_cast<double>(i) / (samples - 1);
            if (i) os << ',';
            os << '[' << x << ',' << m.dirac_weight(x) << ']';
        }
        os << ']';
    }
    os << '}';
    return os.str();
}

} // namespace hyperslender
