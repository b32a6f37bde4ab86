#include "hyperslender/closed_forms.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <utility>

namespace hyperslender {

namespace {

// Memoized cumulative integral int_0^x f(t) dt. The closed-form weights
// evaluate it at quadrature nodes and finite-difference stencils that repeat
// heavily; caching keeps repeated samples cheap and guarantees that every
// weight sharing the integral sees bit-identical values.
class Cumulative {
  public:
    Cumulative(std::function<double(double)> f, QuadratureConfig cfg)
        : f_(std::move(f)), cfg_(cfg) {}

    double at(double x) const {
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = memo_.find(x);
            if (it != memo_.end()) return it->second;
        }
        const double v =
            x == 0.0 ? 0.0 : integrate_1d(f_, 0.0, x, cfg_).value;
        std::lock_guard<std::mutex> lk(mu_);
        return memo_.emplace(x, v).first->second;
    }

  private:
    std::function<double(double)> f_;
    QuadratureConfig cfg_;
    mutable std::mutex mu_;
    mutable std::map<double, double> memo_;
};

using CumPtr = std::shared_ptr<const Cumulative>;

CumPtr make_cumulative(std::function<double(double)> f,
                       const QuadratureConfig& cfg) {
    return std::make_shared<const Cumulative>(std::move(f), cfg);
}

void require_profile(const std::shared_ptr<const BodyProfile>& p) {
    if (!p) throw BadParameter("solve: profile must not be null");
}

[[noreturn]] void throw_not_admissible(const char* which,
                                       const AdmissibilityVerdict& v) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "solve_%s: profile fails the admissibility inequality "
                  "(worst margin %.6g at x = %.6g)",
                  which, v.worst_margin, v.worst_x);
    throw NotAdmissible(buf);
}

// The y-direction Dirac weights are the slope multiples of the x-direction
// ones (the singular flux is tangent to the curve).
std::array<std::function<double(double)>, 4>
slope_multiples(const RegionSpec& region,
                const std::array<std::function<double(double)>, 4>& wx) {
    std::array<std::function<double(double)>, 4> wy;
    for (int k = 0; k < 4; ++k)
        wy[k] = [region, w = wx[k]](double x) { return region.dg(x) * w(x); };
    return wy;
}

void record_wp_min(MeasureSolution& sol, int n = 512) {
    double best = std::numeric_limits<double>::infinity(), bx = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = sol.region.x_max * static_cast<double>(i) / n;
        const double w = sol.w_p(x);
        if (w < best) {
            best = w;
            bx = x;
        }
    }
    sol.wp_grid_min = best;
    sol.wp_grid_min_x = bx;
}

std::function<double(double, double)> const_density(double c) {
    if (c == 0.0) return nullptr;
    return [c](double, double) { return c; };
}

} // namespace

const char* problem_name(Problem p) {
    switch (p) {
    case Problem::A: return "A";
    case Problem::B: return "B";
    case Problem::A3: return "A3";
    case Problem::B3: return "B3";
    }
    return "?";
}

Problem parse_problem(const std::string& s) {
    if (s == "A" || s == "a") return Problem::A;
    if (s == "B" || s == "b") return Problem::B;
    if (s == "A3" || s == "a3") return Problem::A3;
    if (s == "B3" || s == "b3") return Problem::B3;
    throw BadParameter("unknown problem '" + s + "' (expected A, B, A3, B3)");
}

Flavor problem_flavor(Problem p) {
    switch (p) {
    case Problem::A: return Flavor::planar;
    case Problem::B: return Flavor::planar_scaled;
    case Problem::A3: return Flavor::axisym;
    case Problem::B3: return Flavor::axisym_scaled;
    }
    return Flavor::planar;
}

bool problem_is_axisym(Problem p) {
    return p == Problem::A3 || p == Problem::B3;
}

bool problem_is_scaled(Problem p) {
    return p == Problem::B || p == Problem::B3;
}

const char* component_name(Component c) {
    switch (c) {
    case Component::mass_x: return "mass_x";
    case Component::mass_y: return "mass_y";
    case Component::momx_x: return "momx_x";
    case Component::momx_y: return "momx_y";
    case Component::momy_x: return "momy_x";
    case Component::momy_y: return "momy_y";
    case Component::energy_x: return "energy_x";
    case Component::energy_y: return "energy_y";
    case Component::pressure: return "pressure";
    case Component::pressure_zeroth: return "pressure_zeroth";
    }
    return "?";
}

RadonMeasure MeasureSolution::component(Component c) const {
    const Flavor fl = problem_flavor(problem);
    switch (c) {
    case Component::mass_x:
        return RadonMeasure(fl, region, const_density(ac_x[0]), wx[0]);
    case Component::mass_y:
        return RadonMeasure(fl, region, const_density(ac_y[0]), wy[0]);
    case Component::momx_x:
        return RadonMeasure(fl, region, const_density(ac_x[1]), wx[1]);
    case Component::momx_y:
        return RadonMeasure(fl, region, const_density(ac_y[1]), wy[1]);
    case Component::momy_x:
        return RadonMeasure(fl, region, const_density(ac_x[2]), wx[2]);
    case Component::momy_y:
        return RadonMeasure(fl, region, const_density(ac_y[2]), wy[2]);
    case Component::energy_x:
        return RadonMeasure(fl, region, const_density(ac_x[3]), wx[3]);
    case Component::energy_y:
        return RadonMeasure(fl, region, const_density(ac_y[3]), wy[3]);
    case Component::pressure:
        return dirac_measure(fl, region, w_p, /*arclength=*/false);
    case Component::pressure_zeroth:
        if (problem_is_axisym(problem))
            return ac_measure(fl, region, p_ref,
                              /*radial_area_override_off=*/true);
        return RadonMeasure(fl, region, nullptr, nullptr);
    }
    throw BadParameter("component: unknown key");
}

std::map<Component, RadonMeasure> MeasureSolution::components() const {
    std::map<Component, RadonMeasure> out;
    for (Component c :
         {Component::mass_x, Component::mass_y, Component::momx_x,
          Component::momx_y, Component::momy_x, Component::momy_y,
          Component::energy_x, Component::energy_y, Component::pressure,
          Component::pressure_zeroth})
        out.emplace(c, component(c));
    return out;
}

RadonMeasure MeasureSolution::density_measure() const {
    return RadonMeasure(problem_flavor(problem), region,
                        const_density(ac_rho), w_rho);
}

MeasureSolution solve_A(std::shared_ptr<const BodyProfile> profile,
                        const UpstreamState& st, const SolveOptions& opt) {
    require_profile(profile);
    const AdmissibilityVerdict ok =
        admissible_A(*profile, st.tau, st.gamma, st.K, opt.admissibility_grid);
    if (!ok.admissible) throw_not_admissible("A", ok);

    MeasureSolution sol;
    sol.problem = Problem::A;
    sol.region = make_region(RegionSpec::Kind::planar, profile, st.tau,
                             opt.x_max, opt.y_max);
    sol.quad = opt.quad;
    sol.gamma = st.gamma;
    sol.K = st.K;
    sol.rho_inf = st.rho_inf;
    sol.u_inf = st.u_inf;
    sol.tau = st.tau;
    sol.p_ref = st.p_inf;
    sol.E_ref = st.E_inf;

    const double tau = st.tau, t2 = tau * tau;
    const double ru = st.rho_inf * st.u_inf, ruu = ru * st.u_inf;
    const CumPtr H = make_cumulative(
        [profile, t2](double t) {
            const ProfileEval e = profile->eval(t);
            return e.db / std::sqrt(1.0 + t2 * e.db * e.db);
        },
        opt.quad);

    auto wm0 = [profile, t2, ru, tau](double x) {
        const ProfileEval e = profile->eval(x);
        return ru * tau * e.b / std::sqrt(1.0 + t2 * e.db * e.db);
    };
    auto wm1 = [profile, t2, ruu, tau, H](double x) {
        const ProfileEval e = profile->eval(x);
        return ruu * tau * H->at(x) / (1.0 + t2 * e.db * e.db);
    };
    sol.wx = {wm0, wm1,
              [profile, tau, wm1](double x) {
                  return tau * profile->slope(x) * wm1(x);
              },
              [wm0, E = st.E_inf](double x) { return E * wm0(x); }};
    sol.wy = slope_multiples(sol.region, sol.wx);

    sol.w_rho = [profile, tau, rho = st.rho_inf, H](double x) {
        if (x == 0.0) return 0.0;
        const double b = profile->value(x);
        return rho * tau * b * b / H->at(x);
    };
    sol.w_p = [profile, t2, ruu, p = st.p_inf, H](double x) {
        const ProfileEval e = profile->eval(x);
        const double A = 1.0 + t2 * e.db * e.db;
        return p + ruu * t2 * (e.ddb * H->at(x) + e.db * e.db * std::sqrt(A)) /
                       (A * std::sqrt(A));
    };
    sol.trace = [profile, t2, u = st.u_inf, E = st.E_inf, tau,
                 H](double x) -> SurfaceTrace {
        const ProfileEval e = profile->eval(x);
        const double uu =
            x == 0.0 ? u / (1.0 + t2 * e.db * e.db)
                     : u * H->at(x) / (e.b * std::sqrt(1.0 + t2 * e.db * e.db));
        return {uu, tau * e.db * uu, E};
    };

    sol.ac_rho = st.rho_inf;
    sol.ac_x = {ru, ruu + st.p_inf, 0.0, ru * st.E_inf};
    sol.ac_y = {0.0, 0.0, st.p_inf, 0.0};
    sol.inflow_c = sol.ac_x;
    record_wp_min(sol);
    return sol;
}

MeasureSolution solve_B(std::shared_ptr<const BodyProfile> profile,
                        const ScaledUpstreamState& st,
                        const SolveOptions& opt) {
    require_profile(profile);
    const AdmissibilityVerdict ok =
        admissible_B(*profile, st.gamma, st.K, opt.admissibility_grid);
    if (!ok.admissible) throw_not_admissible("B", ok);

    MeasureSolution sol;
    sol.problem = Problem::B;
    sol.region = make_region(RegionSpec::Kind::planar, profile, 1.0, opt.x_max,
                             opt.y_max);
    sol.quad = opt.quad;
    sol.gamma = st.gamma;
    sol.K = st.K;
    sol.p_ref = st.p_bar_inf;
    sol.E_ref = st.E_bar_inf;

    const CumPtr J = make_cumulative(
        [profile](double t) {
            const ProfileEval e = profile->eval(t);
            return e.b * e.db * e.ddb;
        },
        opt.quad);

    auto wm0 = [profile](double x) {
        const ProfileEval e = profile->eval(x);
        return e.b / std::sqrt(1.0 + e.db * e.db);
    };
    auto wm1 = [profile, J](double x) {
        const ProfileEval e = profile->eval(x);
        return (-e.b * e.db * e.db + J->at(x)) /
               std::sqrt(1.0 + e.db * e.db);
    };
    sol.wx = {wm0, wm1,
              [profile, wm0](double x) { return profile->slope(x) * wm0(x); },
              [wm0, E = st.E_bar_inf](double x) { return E * wm0(x); }};
    sol.wy = slope_multiples(sol.region, sol.wx);

    sol.w_rho = wm0;
    sol.w_p = [profile, p = st.p_bar_inf](double x) {
        const ProfileEval e = profile->eval(x);
        return p + e.db * e.db + e.b * e.ddb;
    };
    sol.trace = [profile, E = st.E_bar_inf, J](double x) -> SurfaceTrace {
        const ProfileEval e = profile->eval(x);
        const double ub = x == 0.0 ? -e.db * e.db
                                   : -e.db * e.db + J->at(x) / e.b;
        return {ub, e.db, E};
    };

    sol.ac_rho = 1.0;
    sol.ac_x = {1.0, st.p_bar_inf, 0.0, st.E_bar_inf};
    sol.ac_y = {0.0, 0.0, st.p_bar_inf, 0.0};
    sol.inflow_c = sol.ac_x;
    record_wp_min(sol);
    return sol;
}

MeasureSolution solve_A3(std::shared_ptr<const BodyProfile> profile,
                         const UpstreamState& st, const SolveOptions& opt) {
    require_profile(profile);
    const AdmissibilityVerdict ok = admissible_A3(*profile, st.tau, st.gamma,
                                                  st.K, opt.admissibility_grid);
    if (!ok.admissible) throw_not_admissible("A3", ok);

    MeasureSolution sol;
    sol.problem = Problem::A3;
    sol.region = make_region(RegionSpec::Kind::axisym, profile, st.tau,
                             opt.x_max, opt.y_max);
    sol.quad = opt.quad;
    sol.gamma = st.gamma;
    sol.K = st.K;
    sol.rho_inf = st.rho_inf;
    sol.u_inf = st.u_inf;
    sol.tau = st.tau;
    sol.p_ref = st.p_inf;
    sol.E_ref = st.E_inf;

    const double tau = st.tau, t2 = tau * tau;
    const double ru = st.rho_inf * st.u_inf, ruu = ru * st.u_inf;
    const CumPtr M = make_cumulative(
        [profile, t2](double t) {
            const ProfileEval e = profile->eval(t);
            return e.b * e.db / std::sqrt(1.0 + t2 * e.db * e.db);
        },
        opt.quad);

    auto wa0 = [profile, t2, ru, tau](double x) {
        const ProfileEval e = profile->eval(x);
        return tau * ru * e.b / (2.0 * std::sqrt(1.0 + t2 * e.db * e.db));
    };
    auto wa1 = [profile, t2, ruu, tau, M](double x) {
        if (x == 0.0) return 0.0;
        const ProfileEval e = profile->eval(x);
        return tau * ruu * M->at(x) / (e.b * (1.0 + t2 * e.db * e.db));
    };
    sol.wx = {wa0, wa1,
              [profile, tau, wa1](double x) {
                  return tau * profile->slope(x) * wa1(x);
              },
              [wa0, E = st.E_inf](double x) { return E * wa0(x); }};
    sol.wy = slope_multiples(sol.region, sol.wx);

    sol.w_rho = [profile, tau, rho = st.rho_inf, M](double x) {
        if (x == 0.0) return 0.0;
        const double f = profile->value(x);
        return tau * rho * f * f * f / (4.0 * M->at(x));
    };
    sol.w_p = [profile, t2, ruu, p = st.p_inf, M](double x) {
        const ProfileEval e = profile->eval(x);
        const double A = 1.0 + t2 * e.db * e.db;
        if (x == 0.0) return p + ruu * t2 * e.db * e.db / A;
        return p + ruu * t2 *
                       (e.ddb * M->at(x) + std::sqrt(A) * e.b * e.db * e.db) /
                       (e.b * A * std::sqrt(A));
    };
    sol.trace = [profile, t2, u = st.u_inf, E = st.E_inf, tau,
                 M](double x) -> SurfaceTrace {
        const ProfileEval e = profile->eval(x);
        const double uu =
            x == 0.0
                ? u / (1.0 + t2 * e.db * e.db)
                : 2.0 * u * M->at(x) /
                      (e.b * e.b * std::sqrt(1.0 + t2 * e.db * e.db));
        return {uu, tau * e.db * uu, E};
    };

    sol.ac_rho = st.rho_inf;
    sol.ac_x = {ru, ruu + st.p_inf, 0.0, ru * st.E_inf};
    sol.ac_y = {0.0, 0.0, st.p_inf, 0.0};
    sol.inflow_c = sol.ac_x;
    record_wp_min(sol);
    return sol;
}

MeasureSolution solve_B3(std::shared_ptr<const BodyProfile> profile,
                         const ScaledUpstreamState& st,
                         const SolveOptions& opt) {
    require_profile(profile);
    const AdmissibilityVerdict ok =
        admissible_B3(*profile, st.gamma, st.K, opt.admissibility_grid);
    if (!ok.admissible) throw_not_admissible("B3", ok);

    MeasureSolution sol;
    sol.problem = Problem::B3;
    sol.region = make_region(RegionSpec::Kind::axisym, profile, 1.0, opt.x_max,
                             opt.y_max);
    sol.quad = opt.quad;
    sol.gamma = st.gamma;
    sol.K = st.K;
    sol.p_ref = st.p_bar_inf;
    sol.E_ref = st.E_bar_inf;

    const CumPtr J3 = make_cumulative(
        [profile](double t) {
            const ProfileEval e = profile->eval(t);
            return e.b * e.b * e.db * e.ddb;
        },
        opt.quad);

    auto wa0 = [profile](double x) {
        const ProfileEval e = profile->eval(x);
        return e.b / (2.0 * std::sqrt(1.0 + e.db * e.db));
    };
    auto wa1 = [profile, J3](double x) {
        if (x == 0.0) return 0.0;
        const ProfileEval e = profile->eval(x);
        return (-e.b * e.b * e.db * e.db + J3->at(x)) /
               (2.0 * e.b * std::sqrt(1.0 + e.db * e.db));
    };
    sol.wx = {wa0, wa1,
              [profile, wa0](double x) { return profile->slope(x) * wa0(x); },
              [wa0, E = st.E_bar_inf](double x) { return E * wa0(x); }};
    sol.wy = slope_multiples(sol.region, sol.wx);

    sol.w_rho = wa0;
    sol.w_p = [profile, p = st.p_bar_inf](double x) {
        const ProfileEval e = profile->eval(x);
        return p + e.db * e.db + 0.5 * e.b * e.ddb;
    };
    sol.trace = [profile, E = st.E_bar_inf, J3](double x) -> SurfaceTrace {
        const ProfileEval e = profile->eval(x);
        const double ub = x == 0.0
                              ? -e.db * e.db
                              : -e.db * e.db + J3->at(x) / (e.b * e.b);
        return {ub, e.db, E};
    };

    sol.ac_rho = 1.0;
    sol.ac_x = {1.0, st.p_bar_inf, 0.0, st.E_bar_inf};
    sol.ac_y = {0.0, 0.0, st.p_bar_inf, 0.0};
    sol.inflow_c = sol.ac_x;
    record_wp_min(sol);
    return sol;
}

std::array<double, 2> pressure_force_density(const MeasureSolution& sol,
                                             double x) {
    const double gp = sol.region.dg(x);
    const double s = std::sqrt(1.0 + gp * gp);
    const double wp = sol.w_p(x);
    return {wp * gp / s, -wp / s};
}

void write_solution_csv(std::ostream& os, const MeasureSolution& sol,
                        const std::vector<double>& grid,
                        const std::string& config_comment) {
    if (!config_comment.empty()) os << "# config: " << config_comment << "\n";
    os << (problem_is_axisym(sol.problem)
               ? "x,w_rho,w_a0,w_b0,w_a1,w_b1,w_a2,w_b2,w_a3,w_b3,w_p,"
                 "u_trace,v_trace,E_trace"
               : "x,w_rho,w_m0,w_n0,w_m1,w_n1,w_m2,w_n2,w_m3,w_n3,w_p,"
                 "u_trace,v_trace,E_trace")
       << "\n";
    char buf[40];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf << sep;
    };
    for (double x : grid) {
        const SurfaceTrace tr = sol.trace(x);
        put(x, ',');
        put(sol.w_rho(x), ',');
        for (int k = 0; k < 4; ++k) {
            put(sol.wx[k](x), ',');
            put(sol.wy[k](x), ',');
        }
        put(sol.w_p(x), ',');
        put(tr.u, ',');
        put(tr.v, ',');
        put(tr.E, '\n');
    }
}

} // namespace hyperslender
