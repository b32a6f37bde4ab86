#include "hyperslender/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "hyperslender/parallel.hpp"

namespace hyperslender {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// prefix integrals int_0^{grid[j]} fn, one adaptive pass per segment
std::vector<double> cumulative_grid(const std::function<double(double)>& fn,
                                    const std::vector<double>& grid,
                                    const QuadratureConfig& cfg) {
    std::vector<double> out(grid.size());
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (grid[j] > prev) acc += integrate_1d(fn, prev, grid[j], cfg).value;
        out[j] = acc;
        prev = grid[j];
    }
    return out;
}

struct TraceColumns {
    std::vector<double> u, v, P, drdev; // P omits the common upstream constant
    double E = 0.0;
};

// Shared evaluator for the similarity-variable surface data of the
// dimensional solution at slenderness tau; tau = 0 reproduces the scaled
// solution exactly, so sweep errors are differences of the same expression.
TraceColumns eval_columns(const BodyProfile& profile, double K, double gamma,
                          double tau, const std::vector<double>& grid,
                          bool axisym, const QuadratureConfig& cfg) {
    const double t2 = tau * tau;
    TraceColumns col;
    col.E = scaled_upstream(K, gamma).E_bar_inf;
    const std::size_t n = grid.size();
    col.u.resize(n);
    col.v.resize(n);
    col.P.resize(n);
    col.drdev.assign(n, 0.0);

    if (!axisym) {
        const auto num = [&profile, t2](double t) {
            const ProfileEval e = profile.eval(t);
            return e.db * (e.db * e.db + e.b * e.ddb) /
                   std::sqrt(1.0 + t2 * e.db * e.db);
        };
        const auto slope = [&profile, t2](double t) {
            const double db = profile.slope(t);
            return db / std::sqrt(1.0 + t2 * db * db);
        };
        const std::vector<double> I = cumulative_grid(num, grid, cfg);
        const std::vector<double> H = cumulative_grid(slope, grid, cfg);
        for (std::size_t j = 0; j < n; ++j) {
            const ProfileEval e = profile.eval(grid[j]);
            const double A = 1.0 + t2 * e.db * e.db;
            const double sA = std::sqrt(A);
            col.u[j] = -I[j] / (e.b * sA);
            col.v[j] = e.db * (1.0 + t2 * col.u[j]);
            col.P[j] = (e.ddb * H[j] + e.db * e.db * sA) / (A * sA);
            if (tau > 0.0) col.drdev[j] = t2 * std::abs(I[j]) / H[j];
        }
    } else {
        const auto num = [&profile, t2](double t) {
            const ProfileEval e = profile.eval(t);
            return e.db * (2.0 * e.b * e.db * e.db + e.b * e.b * e.ddb) /
                   std::sqrt(1.0 + t2 * e.db * e.db);
        };
        const auto area = [&profile, t2](double t) {
            const ProfileEval e = profile.eval(t);
            return e.b * e.db / std::sqrt(1.0 + t2 * e.db * e.db);
        };
        const std::vector<double> I = cumulative_grid(num, grid, cfg);
        const std::vector<double> M = cumulative_grid(area, grid, cfg);
        for (std::size_t j = 0; j < n; ++j) {
            const ProfileEval e = profile.eval(grid[j]);
            const double A = 1.0 + t2 * e.db * e.db;
            const double sA = std::sqrt(A);
            col.u[j] = -I[j] / (e.b * e.b * sA);
            col.v[j] = e.db * (1.0 + t2 * col.u[j]);
            col.P[j] = (e.ddb * M[j] + sA * e.b * e.db * e.db) / (e.b * A * sA);
            if (tau > 0.0) col.drdev[j] = t2 * std::abs(I[j]) / (2.0 * M[j]);
        }
    }
    return col;
}

SimilarityTrace trace_at(const BodyProfile& profile, double K, double gamma,
                         double tau, double x_bar, bool axisym,
                         const QuadratureConfig& cfg) {
    upstream(K, tau, gamma); // parameter validation
    SimilarityTrace tr;
    tr.E = scaled_upstream(K, gamma).E_bar_inf;
    const ProfileEval e = profile.eval(x_bar);
    const double t2 = tau * tau;
    const double A = 1.0 + t2 * e.db * e.db;
    if (x_bar == 0.0) { // analytic tip limit
        tr.u = -e.db * e.db / A;
        tr.v = e.db * (1.0 + t2 * tr.u);
        return tr;
    }
    const std::vector<double> grid = {x_bar};
    const TraceColumns col =
        eval_columns(profile, K, gamma, tau, grid, axisym, cfg);
    tr.u = col.u[0];
    tr.v = col.v[0];
    return tr;
}

double fit_rate(const std::vector<double>& taus,
                const std::vector<double>& errs) {
    // largest tau (first entry) is pre-asymptotic; fit the rest
    std::vector<double> lx, ly;
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (std::isfinite(errs[i]) && errs[i] > 0.0) {
            lx.push_back(std::log(taus[i]));
            ly.push_back(std::log(errs[i]));
        }
    if (lx.size() < 2) return kNaN;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

void append_g17(std::string& s, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
}

} // namespace

SimilarityTrace scaled_trace_A(const BodyProfile& profile, double K,
                               double gamma, double tau, double x_bar,
                               const QuadratureConfig& cfg) {
    return trace_at(profile, K, gamma, tau, x_bar, false, cfg);
}

SimilarityTrace scaled_trace_A3(const BodyProfile& profile, double K,
                                double gamma, double tau, double x_bar,
                                const QuadratureConfig& cfg) {
    return trace_at(profile, K, gamma, tau, x_bar, true, cfg);
}

const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::u_trace: return "u_trace";
        case Quantity::v_trace: return "v_trace";
        case Quantity::E_trace: return "E_trace";
        case Quantity::density_weight_ratio: return "density_weight_ratio";
        case Quantity::pressure_weight: return "pressure_weight";
    }
    throw BadParameter("quantity_name: unknown quantity");
}

std::vector<ConvergenceReport> converge(
    std::shared_ptr<const BodyProfile> profile, double K, double gamma,
    const std::vector<double>& taus, const ConvergenceOptions& opt) {
    if (!profile) throw BadParameter("converge: profile must not be null");
    if (taus.empty()) throw BadParameter("converge: taus must not be empty");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0) || !(taus[i] < 1.0))
            throw BadParameter("converge: every tau must lie in (0, 1)");
        if (i > 0 && !(taus[i] < taus[i - 1]))
            throw BadParameter("converge: taus must be strictly decreasing");
    }
    if (opt.grid_n < 2) throw BadParameter("converge: grid_n must be >= 2");
    const double X = profile->domain_end();
    if (!(opt.x_min > 0.0) || !(opt.x_min < X))
        throw BadParameter("converge: x_min must lie in (0, domain_end)");

    std::vector<double> grid(static_cast<std::size_t>(opt.grid_n));
    for (int j = 0; j < opt.grid_n; ++j)
        grid[static_cast<std::size_t>(j)] =
            opt.x_min + (X - opt.x_min) * j / (opt.grid_n - 1);

    const TraceColumns ref =
        eval_columns(*profile, K, gamma, 0.0, grid, opt.axisym, opt.quad);

    const std::size_t nt = taus.size();
    constexpr int kQuantities = 5;
    std::vector<std::array<double, kQuantities>> sups(
        nt, {kNaN, kNaN, kNaN, kNaN, kNaN});
    std::vector<std::string> notes(nt);

    parallel_for(nt, [&](std::size_t i) {
        const double tau = taus[i];
        const AdmissibilityVerdict ok =
            opt.axisym ? admissible_A3(*profile, tau, gamma, K)
                       : admissible_A(*profile, tau, gamma, K);
        if (!ok.admissible) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "tau = %.17g: profile fails the admissibility "
                          "inequality (worst margin %.6g at x = %.6g)",
                          tau, ok.worst_margin, ok.worst_x);
            notes[i] = buf;
            return;
        }
        const TraceColumns col =
            eval_columns(*profile, K, gamma, tau, grid, opt.axisym, opt.quad);
        std::array<double, kQuantities> s{};
        for (std::size_t j = 0; j < grid.size(); ++j) {
            s[0] = std::max(s[0], std::abs(col.u[j] - ref.u[j]));
            s[1] = std::max(s[1], std::abs(col.v[j] - ref.v[j]));
            s[2] = std::max(s[2], std::abs(col.E - ref.E));
            s[3] = std::max(s[3], col.drdev[j]);
            s[4] = std::max(s[4], std::abs(col.P[j] - ref.P[j]));
        }
        sups[i] = s;
    });

    std::vector<ConvergenceReport> reports(kQuantities);
    for (int q = 0; q < kQuantities; ++q) {
        ConvergenceReport& r = reports[static_cast<std::size_t>(q)];
        r.quantity = static_cast<Quantity>(q);
        r.taus = taus;
        r.grid = grid;
        r.tau_notes = notes;
        r.sup_errors.resize(nt);
        for (std::size_t i = 0; i < nt; ++i)
            r.sup_errors[i] = sups[i][static_cast<std::size_t>(q)];
        r.fitted_rate = fit_rate(taus, r.sup_errors);
    }
    return reports;
}

void write_convergence_csv(std::ostream& os,
                           const std::vector<ConvergenceReport>& reports,
                           const std::string& config_comment) {
    if (reports.size() != 5)
        throw BadParameter("write_convergence_csv: expected the five-report "
                           "batch produced by converge");
    std::string out;
    if (!config_comment.empty()) {
        out += "# config: ";
        out += config_comment;
        out += '\n';
    }
    out += "tau,sup_err_u,sup_err_v,sup_err_E,sup_err_density_ratio,"
           "sup_err_wp\n";
    for (std::size_t i = 0; i < reports[0].taus.size(); ++i) {
        append_g17(out, reports[0].taus[i]);
        for (const ConvergenceReport& r : reports) {
            out += ',';
            append_g17(out, r.sup_errors[i]);
        }
        out += '\n';
    }
    os << out;
}

std::string convergence_json(const std::vector<ConvergenceReport>& reports,
                             const std::string& params_json) {
    nlohmann::ordered_json doc;
    if (!params_json.empty()) {
        nlohmann::json params = nlohmann::json::parse(params_json);
        if (!params.is_object())
            throw BadParameter("convergence_json: params_json must be a JSON "
                               "object");
        doc["params"] = params;
    }
    doc["quantities"] = nlohmann::ordered_json::array();
    for (const ConvergenceReport& r : reports) {
        nlohmann::ordered_json q;
        q["quantity"] = quantity_name(r.quantity);
        q["taus"] = r.taus;
        q["sup_errors"] = r.sup_errors;
        q["fitted_rate"] = r.fitted_rate;
        q["tau_notes"] = r.tau_notes;
        doc["quantities"].push_back(std::move(q));
    }
    return doc.dump(2);
}

double HSDState::sound() const {
    return std::sqrt(0.5 * (gamma - 1.0) * internal());
}

double HSDState::pressure() const {
    return (gamma - 1.0) / (2.0 * gamma) * rho * internal();
}

HSDState make_hsd_state(double rho, double u, double v, double E,
                        double gamma) {
    if (!(gamma > 1.0)) throw BadParameter("hsd state: gamma must be > 1");
    if (!(rho > 0.0)) throw BadParameter("hsd state: density must be > 0");
    HSDState s;
    s.rho = rho;
    s.u = u;
    s.v = v;
    s.E = E;
    s.gamma = gamma;
    if (!(s.internal() > 0.0))
        throw NonHyperbolic("hsd state: E - 2u - v^2 must be > 0 for a real "
                            "sound speed");
    return s;
}

FluxJacobians hsd_flux_jacobians(const HSDState& s) {
    const double g = s.gamma;
    const double q = s.internal();
    const double gq = (g - 1.0) / (2.0 * g); // d p / d(rho E) factor
    FluxJacobians J;
    J.W = {{{1.0, 0.0, 0.0, 0.0},
            {s.u + gq * q, s.rho / g, (1.0 - g) * s.rho * s.v / g,
             gq * s.rho},
            {s.v, 0.0, s.rho, 0.0},
            {s.E, 0.0, 0.0, s.rho}}};
    J.H = {{{s.v, 0.0, s.rho, 0.0},
            {s.u * s.v, s.rho * s.v, s.rho * s.u, 0.0},
            {s.v * s.v + gq * q, -(g - 1.0) * s.rho / g,
             2.0 * s.rho * s.v + (1.0 - g) * s.rho * s.v / g, gq * s.rho},
            {s.E * s.v, 0.0, s.rho * s.E, s.rho * s.v}}};
    return J;
}

double det4(const Mat4& m) {
    Mat4 a = m;
    double det = 1.0;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (a[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < 4; ++r) {
            const double f = a[r][c] / a[c][c];
            for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

namespace {

Mat4 pencil(const FluxJacobians& J, double lambda) {
    Mat4 a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a[r][c] = lambda * J.W[r][c] - J.H[r][c];
    return a;
}

} // namespace

double char_poly_residual(const HSDState& s, double lambda) {
    const FluxJacobians J = hsd_flux_jacobians(s);
    const double lead = std::pow(s.rho, 3) / s.gamma;
    const double span = std::max(1.0, std::abs(s.v) + s.sound());
    return std::abs(det4(pencil(J, lambda))) / (lead * std::pow(span, 4));
}

double eigenvalue(const HSDState& s, int field_index) {
    switch (field_index) {
        case 1: return s.v - s.sound();
        case 2:
        case 3: return s.v;
        case 4: return s.v + s.sound();
    }
    throw BadParameter("eigenvalue: field index must be 1..4");
}

std::array<double, 4> eigenvalue_gradient(const HSDState& s,
                                          int field_index) {
    if (field_index == 2 || field_index == 3) return {0.0, 0.0, 1.0, 0.0};
    if (field_index != 1 && field_index != 4)
        throw BadParameter("eigenvalue_gradient: field index must be 1..4");
    const double sign = field_index == 1 ? -1.0 : 1.0;
    const double c = s.sound();
    const double gm1 = s.gamma - 1.0;
    // grad c = (0, -(g-1)/(2c), -(g-1) v/(2c), (g-1)/(4c))
    return {0.0, -sign * gm1 / (2.0 * c), 1.0 - sign * gm1 * s.v / (2.0 * c),
            sign * gm1 / (4.0 * c)};
}

namespace {

std::array<double, 4> eigenvector(const HSDState& s, int field_index) {
    const double c = s.sound();
    const double q = s.internal();
    switch (field_index) {
        case 1: return {-s.rho / c, c - s.v, 1.0, 0.0};
        case 2: return {2.0 * s.rho / q, 1.0, 0.0, 0.0};
        case 3: return {-s.rho / q, 0.0, 0.0, 1.0};
        case 4: return {s.rho / c, -s.v - c, 1.0, 0.0};
    }
    throw BadParameter("eigenvector: field index must be 1..4");
}

} // namespace

CharField characteristic_field_class(const HSDState& s, int field_index) {
    const std::array<double, 4> r = eigenvector(s, field_index);
    static constexpr double HSDState::* members[4] = {
        &HSDState::rho, &HSDState::u, &HSDState::v, &HSDState::E};
    CharField out;
    for (std::size_t j = 0; j < 4; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(s.*members[j]));
        HSDState lo = s, hi = s;
        lo.*members[j] -= h;
        hi.*members[j] += h;
        const double grad =
            (eigenvalue(hi, field_index) - eigenvalue(lo, field_index)) /
            (2.0 * h);
        out.grad_dot_r += grad * r[j];
    }
    out.linearly_degenerate = std::abs(out.grad_dot_r) <= 1e-6;
    return out;
}

EigenReport hsd_eigen(const HSDState& s) {
    if (!(s.rho > 0.0) || !(s.gamma > 1.0))
        throw BadParameter("hsd_eigen: invalid state");
    if (!(s.internal() > 0.0))
        throw NonHyperbolic("hsd_eigen: E - 2u - v^2 must be > 0");
    EigenReport rep;
    for (int i = 1; i <= 4; ++i) {
        rep.eigenvalues[static_cast<std::size_t>(i - 1)] = eigenvalue(s, i);
        rep.eigenvectors[static_cast<std::size_t>(i - 1)] = eigenvector(s, i);
        rep.fields[static_cast<std::size_t>(i - 1)] =
            characteristic_field_class(s, i);
    }
    return rep;
}

double eigen_residual(const HSDState& s, const EigenReport& rep) {
    const FluxJacobians J = hsd_flux_jacobians(s);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Mat4 a = pencil(J, rep.eigenvalues[static_cast<std::size_t>(i)]);
        const std::array<double, 4>& r =
            rep.eigenvectors[static_cast<std::size_t>(i)];
        double norm_a = 0.0, norm_r = 0.0, norm_ar = 0.0;
        for (int row = 0; row < 4; ++row) {
            double sum = 0.0, dot = 0.0;
            for (int c = 0; c < 4; ++c) {
                sum += std::abs(a[row][c]);
                dot += a[row][c] * r[static_cast<std::size_t>(c)];
            }
            norm_a = std::max(norm_a, sum);
            norm_ar = std::max(norm_ar, std::abs(dot));
            norm_r = std::max(norm_r, std::abs(r[static_cast<std::size_t>(row)]));
        }
        worst = std::max(worst, norm_ar / (norm_a * norm_r));
    }
    return worst;
}

std::string eigen_json(const HSDState& s, const EigenReport& rep,
                       const std::string& params_json) {
    nlohmann::ordered_json doc;
    if (!params_json.empty()) {
        nlohmann::json params = nlohmann::json::parse(params_json);
        if (!params.is_object())
            throw BadParameter("eigen_json: params_json must be a JSON object");
        doc["params"] = params;
    }
    doc["state"] = {{"rho", s.rho},     {"u", s.u},
                    {"v", s.v},         {"E", s.E},
                    {"gamma", s.gamma}, {"sound_speed", s.sound()},
                    {"pressure", s.pressure()}};
    doc["eigenvalues"] = rep.eigenvalues;
    doc["eigenvectors"] = rep.eigenvectors;
    doc["fields"] = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        const CharField& f = rep.fields[static_cast<std::size_t>(i)];
        doc["fields"].push_back(
            {{"field", i + 1},
             {"grad_dot_r", f.grad_dot_r},
             {"classification", f.linearly_degenerate ? "linearly_degenerate"
                                                      : "genuinely_nonlinear"}});
    }
    doc["char_poly_residuals"] = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i)
        doc["char_poly_residuals"].push_back(char_poly_residual(
            s, rep.eigenvalues[static_cast<std::size_t>(i)]));
    doc["eigen_residual"] = eigen_residual(s, rep);
    return doc.dump(2);
}

} // namespace hyperslender
