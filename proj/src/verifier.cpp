#include "hyperslender/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "hyperslender/parallel.hpp"

namespace hyperslender {

namespace {

// Portable uniform draw in [0, 1): fixed mapping from the engine's 64-bit
// output, so batches are reproducible across standard libraries.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

const char* equation_id(const MeasureSolution& sol, int k) {
    static const char* planar[4] = {"mass", "mom_x", "mom_y", "energy"};
    static const char* axisym[4] = {"mass", "mom_x", "mom_r", "energy"};
    return problem_is_axisym(sol.problem) ? axisym[k] : planar[k];
}

} // namespace

std::vector<ResidualReport> verify_weak(const MeasureSolution& sol,
                                        const std::vector<TestFunction>& bumps) {
    const Flavor fl = problem_flavor(sol.problem);
    const bool ax = problem_is_axisym(sol.problem);
    const QuadratureConfig cfg = sol.quad;

    const RadonMeasure comp_x[4] = {
        sol.component(Component::mass_x), sol.component(Component::momx_x),
        sol.component(Component::momy_x), sol.component(Component::energy_x)};
    const RadonMeasure comp_y[4] = {
        sol.component(Component::mass_y), sol.component(Component::momx_y),
        sol.component(Component::momy_y), sol.component(Component::energy_y)};
    const RadonMeasure pres = sol.component(Component::pressure);
    const RadonMeasure pres0 = sol.component(Component::pressure_zeroth);
    // x-momentum surface-pressure term: normal component -g' against dx
    const RadonMeasure pres_x = dirac_measure(
        fl, sol.region,
        [reg = sol.region, wp = sol.w_p](double x) {
            return -reg.dg(x) * wp(x);
        },
        /*arclength=*/false);

    struct Row {
        double raw[4], norm[4];
    };
    std::vector<Row> rows(bumps.size());

    parallel_for(bumps.size(), [&](std::size_t i) {
        const TestFunction& phi = bumps[i];
        check_support(sol.region, phi);
        for (int k = 0; k < 4; ++k) {
            double sum = 0.0, tv = 0.0;
            const auto add = [&](const RadonMeasure& m, Deriv d) {
                sum += pair(m, phi, d, cfg);
                tv += pair_abs(m, phi, d, cfg);
            };
            add(comp_x[k], Deriv::d_x);
            add(comp_y[k], Deriv::d_y);
            if (k == 1) add(pres_x, Deriv::none);
            if (k == 2) {
                add(pres, Deriv::none);
                if (ax) add(pres0, Deriv::none);
            }
            if (sol.inflow_c[k] != 0.0) {
                const double in = inflow_term(sol.inflow_c[k], phi, fl, cfg);
                sum += in;
                tv += std::abs(in);
            }
            rows[i].raw[k] = std::abs(sum);
            rows[i].norm[k] = std::abs(sum) / (tv + 1e-30);
        }
    });

    std::vector<ResidualReport> out(4);
    for (int k = 0; k < 4; ++k) {
        out[k].problem = sol.problem;
        out[k].equation_id = equation_id(sol, k);
        out[k].residuals.reserve(bumps.size());
        for (std::size_t i = 0; i < bumps.size(); ++i) {
            out[k].residuals.push_back(
                {bumps[i], rows[i].raw[k], rows[i].norm[k]});
            out[k].max_normalized =
                std::max(out[k].max_normalized, rows[i].norm[k]);
        }
    }
    return out;
}

std::vector<TestFunction> sample_bumps(const RegionSpec& region, int n,
                                       std::uint64_t seed,
                                       std::array<double, 2> scale_range) {
    if (n < 1) throw BadParameter("sample_bumps: need at least one bump");
    const double lo = scale_range[0], hi = scale_range[1];
    if (!(lo > 0.0) || !(hi >= lo))
        throw BadParameter("sample_bumps: scale_range must satisfy 0 < lo <= hi");

    const double X = region.x_max, Y = region.y_max;
    std::mt19937_64 rng(seed);
    std::vector<TestFunction> out;
    out.reserve(static_cast<std::size_t>(n));

    for (int i = 0; i < n; ++i) {
        const double urx = next_unit(rng), ury = next_unit(rng);
        const double u1 = next_unit(rng), u2 = next_unit(rng);
        double rx = std::min(lo + (hi - lo) * urx, 0.3 * X);
        double ry = std::min(lo + (hi - lo) * ury, 0.3 * Y);

        double x0 = 0.0, y0 = 0.0;
        switch (i % 3) {
        case 0: { // centered on the body curve
            const double xhi = std::max(0.05 * X, X - 1.05 * rx);
            x0 = 0.05 * X + (xhi - 0.05 * X) * u1;
            y0 = region.g(x0);
            ry = std::min(ry, 0.95 * (Y - y0));
            break;
        }
        case 1: { // fully inside the open flow region
            const double xhi = std::max(0.05 * X, X - 1.05 * rx);
            x0 = 0.05 * X + (xhi - 0.05 * X) * u1;
            const double ylo = region.g(x0) + 1.05 * ry;
            const double yhi = Y - 1.05 * ry;
            y0 = yhi > ylo ? ylo + (yhi - ylo) * u2
                           : 0.5 * (region.g(x0) + Y);
            break;
        }
        default: { // straddling the inflow axis x = 0
            x0 = (2.0 * u1 - 1.0) * 0.45 * rx;
            const double ylo = 0.25 * ry;
            const double yhi = std::max(ylo, Y - 1.05 * ry);
            y0 = ylo + (yhi - ylo) * u2;
            break;
        }
        }
        TestFunction b = make_bump(x0, y0, rx, ry);
        check_support(region, b);
        out.push_back(b);
    }
    return out;
}

GridCheckReport check_rn_constraints(const MeasureSolution& sol, int grid_n) {
    if (grid_n < 2) throw BadParameter("check_rn_constraints: grid too small");
    const bool scaled = problem_is_scaled(sol.problem);
    const double X = sol.region.x_max;
    static const Component slots[4][2] = {
        {Component::mass_x, Component::mass_y},
        {Component::momx_x, Component::momx_y},
        {Component::momy_x, Component::momy_y},
        {Component::energy_x, Component::energy_y}};

    GridCheckReport rep;
    for (int i = 1; i <= grid_n; ++i) {
        const double x = X * static_cast<double>(i) / grid_n;
        const SurfaceTrace tr = sol.trace(x);
        const double wr = sol.w_rho(x);
        double want[4][2];
        if (scaled) {
            const double m1 = sol.wx[1](x);
            want[0][0] = wr;
            want[0][1] = tr.v * wr;
            want[1][0] = tr.u * wr;
            want[1][1] = tr.v * m1;
            want[2][0] = tr.v * wr;
            want[2][1] = tr.v * tr.v * wr;
            want[3][0] = tr.E * wr;
            want[3][1] = tr.E * tr.v * wr;
        } else {
            want[0][0] = tr.u * wr;
            want[0][1] = tr.v * wr;
            want[1][0] = tr.u * tr.u * wr;
            want[1][1] = tr.u * tr.v * wr;
            want[2][0] = tr.u * tr.v * wr;
            want[2][1] = tr.v * tr.v * wr;
            want[3][0] = tr.E * tr.u * wr;
            want[3][1] = tr.E * tr.v * wr;
        }
        for (int k = 0; k < 4; ++k)
            for (int d = 0; d < 2; ++d) {
                const double got = (d == 0 ? sol.wx : sol.wy)[k](x);
                const double den =
                    std::max(std::abs(got), std::abs(want[k][d]));
                const double rel =
                    den > 0.0 ? std::abs(got - want[k][d]) / den : 0.0;
                if (rel > rep.max_rel_err) {
                    rep.max_rel_err = rel;
                    rep.worst_x = x;
                    rep.worst_label = component_name(slots[k][d]);
                }
            }
    }
    return rep;
}

GridCheckReport check_weight_odes(const MeasureSolution& sol, int grid_n) {
    if (grid_n < 8) throw BadParameter("check_weight_odes: grid too small");
    const bool ax = problem_is_axisym(sol.problem);
    const double X = sol.region.x_max;
    const double h = X / static_cast<double>(grid_n + 3);

    const auto S = [&](double x) {
        const double gp = sol.region.dg(x);
        return (ax ? sol.region.g(x) : 1.0) * std::sqrt(1.0 + gp * gp);
    };
    const auto rhs = [&](int k, double x) {
        const double gp = sol.region.dg(x);
        const double radius = ax ? sol.region.g(x) : 1.0;
        switch (k) {
        case 0: return sol.ac_x[0] * gp * radius;
        case 1: return gp * (sol.ac_x[1] - sol.w_p(x)) * radius;
        case 2: return (sol.w_p(x) - sol.ac_y[2]) * radius;
        default: return sol.ac_x[3] * gp * radius;
        }
    };

    GridCheckReport rep;
    for (int k = 0; k < 4; ++k) {
        double scale = 0.0;
        for (int j = 0; j < grid_n; ++j)
            scale = std::max(scale, std::abs(rhs(k, h * (2 + j))));
        scale = std::max(scale, 1e-30);
        for (int j = 0; j < grid_n; ++j) {
            const double x = h * (2 + j);
            const auto F = [&](double t) { return S(t) * sol.wx[k](t); };
            const double fd = (F(x - 2.0 * h) - 8.0 * F(x - h) +
                               8.0 * F(x + h) - F(x + 2.0 * h)) /
                              (12.0 * h);
            const double rel = std::abs(fd - rhs(k, x)) / scale;
            if (rel > rep.max_rel_err) {
                rep.max_rel_err = rel;
                rep.worst_x = x;
                rep.worst_label = equation_id(sol, k);
            }
        }
    }
    return rep;
}

std::vector<TauFactorResult> verify_tau_identity(
    std::shared_ptr<const BodyProfile> profile, const UpstreamState& state,
    const std::vector<TestFunction>& bumps, bool axisym,
    const SolveOptions& opt) {
    const MeasureSolution sol = axisym ? solve_A3(profile, state, opt)
                                       : solve_A(profile, state, opt);
    const RadonMeasure dens = sol.density_measure();
    std::vector<TauFactorResult> out(bumps.size());
    parallel_for(bumps.size(), [&](std::size_t i) {
        out[i] = tau_factor_pairing(dens, state.rho_inf, bumps[i], sol.quad);
    });
    return out;
}

bool verification_passes(const std::vector<ResidualReport>& reports,
                         double threshold) {
    for (const ResidualReport& r : reports)
        if (!(r.max_normalized <= threshold)) return false;
    return true;
}

std::string verification_json(const std::vector<ResidualReport>& reports,
                              double threshold,
                              const std::string& params_json) {
    nlohmann::ordered_json doc;
    if (!reports.empty()) doc["problem"] = problem_name(reports[0].problem);
    if (!params_json.empty())
        doc["params"] = nlohmann::ordered_json::parse(params_json);
    doc["residual_threshold"] = threshold;
    doc["pass"] = verification_passes(reports, threshold);
    nlohmann::ordered_json eqs = nlohmann::ordered_json::array();
    for (const ResidualReport& r : reports) {
        nlohmann::ordered_json eq;
        eq["equation"] = r.equation_id;
        eq["max_normalized"] = r.max_normalized;
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const BumpResidual& b : r.residuals)
            list.push_back({{"x0", b.bump.x0},
                            {"y0", b.bump.y0},
                            {"rx", b.bump.rx},
                            {"ry", b.bump.ry},
                            {"k", b.bump.k},
                            {"amplitude", b.bump.amplitude},
                            {"raw", b.raw},
                            {"normalized", b.normalized}});
        eq["bumps"] = std::move(list);
        eqs.push_back(std::move(eq));
    }
    doc["equations"] = std::move(eqs);
    return doc.dump(2);
}

} // namespace hyperslender
