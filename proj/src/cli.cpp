#include "hyperslender/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperslender/analysis.hpp"
#include "hyperslender/closed_forms.hpp"
#include "hyperslender/verifier.hpp"

namespace hyperslender {

namespace {

struct GridSpec {
    double start = 0.0;
    double end = 0.0;
    int count = 0;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    char trail = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &g.start, &g.end, &g.count,
                    &trail) != 3)
        throw BadParameter("--grid must have the form start:end:count");
    if (!(g.end > g.start))
        throw BadParameter("--grid end must exceed its start");
    if (g.count < 2) throw BadParameter("--grid count must be >= 2");
    return g;
}

std::vector<double> linspace(const GridSpec& g) {
    std::vector<double> xs(static_cast<std::size_t>(g.count));
    for (int j = 0; j < g.count; ++j)
        xs[static_cast<std::size_t>(j)] =
            g.start + (g.end - g.start) * j / (g.count - 1);
    return xs;
}

std::vector<double> parse_taus(const std::string& s) {
    std::vector<double> taus;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::string tok =
            comma == std::string::npos ? s.substr(pos) : s.substr(pos, comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size())
            throw BadParameter("--taus must be a comma-separated list of "
                               "numbers");
        taus.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return taus;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

struct Options {
    std::string problem;
    std::string profile_spec;
    double K = 1.0;
    double tau = 0.0;
    double gamma = 1.4;
    double rho_inf = 1.0;
    double u_inf = 1.0;
    std::string grid;
    double domain_end = 4.0;
    int bumps = 50;
    std::uint64_t seed = 0;
    double residual_tol = 1e-6;
    QuadratureConfig quad{};
    std::string out;
    std::string json_out;
    double rho = 1.0, u = 0.0, v = 0.0, E = 0.0; // eigen state
};

// --tau belongs to the dimensional problems only; B and B' are already in
// similarity form.
void check_tau_flag(Problem p, bool tau_given) {
    if (problem_is_scaled(p)) {
        if (tau_given) {
            std::string msg = "the --tau flag does not apply to problem ";
            msg += problem_name(p);
            msg += " (already scaled); remove --tau";
            throw BadParameter(msg);
        }
    } else if (!tau_given) {
        std::string msg = "problem ";
        msg += problem_name(p);
        msg += " requires the --tau flag";
        throw BadParameter(msg);
    }
}

MeasureSolution solve_any(Problem p,
                          std::shared_ptr<const BodyProfile> profile,
                          const Options& o) {
    SolveOptions sopt;
    sopt.quad = o.quad;
    switch (p) {
        case Problem::A:
            return solve_A(profile,
                           upstream(o.K, o.tau, o.gamma, o.rho_inf, o.u_inf),
                           sopt);
        case Problem::B:
            return solve_B(profile, scaled_upstream(o.K, o.gamma), sopt);
        case Problem::A3:
            return solve_A3(profile,
                            upstream(o.K, o.tau, o.gamma, o.rho_inf, o.u_inf),
                            sopt);
        case Problem::B3:
            return solve_B3(profile, scaled_upstream(o.K, o.gamma), sopt);
    }
    throw BadParameter("unknown problem");
}

nlohmann::ordered_json base_config(const char* command, Problem p,
                                   const BodyProfile& profile,
                                   const Options& o) {
    nlohmann::ordered_json cfg;
    cfg["command"] = command;
    cfg["problem"] = problem_name(p);
    cfg["profile"] = profile.describe();
    cfg["domain_end"] = profile.domain_end();
    cfg["K"] = o.K;
    if (!problem_is_scaled(p)) {
        cfg["tau"] = o.tau;
        cfg["rho_inf"] = o.rho_inf;
        cfg["u_inf"] = o.u_inf;
    }
    cfg["gamma"] = o.gamma;
    return cfg;
}

void emit_config(const nlohmann::ordered_json& cfg) {
    std::cout << cfg.dump(2) << "\n";
}

int cmd_solve(const Options& o, bool tau_given) {
    const Problem p = parse_problem(o.problem);
    check_tau_flag(p, tau_given);
    const GridSpec g = parse_grid(o.grid);
    if (g.start < 0.0) throw BadParameter("--grid start must be >= 0");
    const auto profile = std::make_shared<const BodyProfile>(
        parse_profile(o.profile_spec, g.end));

    nlohmann::ordered_json cfg = base_config("solve", p, *profile, o);
    cfg["grid"] = o.grid;
    cfg["quad_abs_tol"] = o.quad.abs_tol;
    cfg["quad_rel_tol"] = o.quad.rel_tol;
    if (!o.out.empty()) cfg["out"] = o.out;
    emit_config(cfg);

    const MeasureSolution sol = solve_any(p, profile, o);
    std::ostringstream csv;
    write_solution_csv(csv, sol, linspace(g), cfg.dump());
    write_output(o.out, csv.str());
    return 0;
}

int cmd_verify(const Options& o, bool tau_given) {
    const Problem p = parse_problem(o.problem);
    check_tau_flag(p, tau_given);
    if (!(o.domain_end > 0.0))
        throw BadParameter("--domain-end must be > 0");
    const auto profile = std::make_shared<const BodyProfile>(
        parse_profile(o.profile_spec, o.domain_end));

    nlohmann::ordered_json cfg = base_config("verify", p, *profile, o);
    cfg["bumps"] = o.bumps;
    cfg["seed"] = o.seed;
    cfg["residual_tol"] = o.residual_tol;
    cfg["quad_abs_tol"] = o.quad.abs_tol;
    cfg["quad_rel_tol"] = o.quad.rel_tol;
    if (!o.out.empty()) cfg["out"] = o.out;
    emit_config(cfg);

    const MeasureSolution sol = solve_any(p, profile, o);
    const std::vector<TestFunction> bumps =
        sample_bumps(sol.region, o.bumps, o.seed);
    const std::vector<ResidualReport> reports = verify_weak(sol, bumps);
    write_output(o.out,
                 verification_json(reports, o.residual_tol, cfg.dump()) + "\n");
    return verification_passes(reports, o.residual_tol) ? 0 : 3;
}

int cmd_converge(const Options& o, const std::string& taus_arg) {
    const Problem p = parse_problem(o.problem);
    if (problem_is_scaled(p)) {
        std::string msg = "problem ";
        msg += problem_name(p);
        msg += " is already scaled; converge sweeps problem A (or A3) toward "
               "its scaled limit";
        throw BadParameter(msg);
    }
    const GridSpec g = parse_grid(o.grid);
    if (!(g.start > 0.0))
        throw BadParameter("--grid start must be > 0 for converge (the tip "
                           "limit is handled analytically)");
    const std::vector<double> taus = parse_taus(taus_arg);
    const auto profile = std::make_shared<const BodyProfile>(
        parse_profile(o.profile_spec, g.end));

    nlohmann::ordered_json cfg = base_config("converge", p, *profile, o);
    cfg.erase("tau");
    cfg.erase("rho_inf");
    cfg.erase("u_inf");
    cfg["taus"] = taus;
    cfg["grid"] = o.grid;
    cfg["quad_abs_tol"] = o.quad.abs_tol;
    cfg["quad_rel_tol"] = o.quad.rel_tol;
    if (!o.out.empty()) cfg["out"] = o.out;
    if (!o.json_out.empty()) cfg["json_out"] = o.json_out;
    emit_config(cfg);

    ConvergenceOptions copt;
    copt.grid_n = g.count;
    copt.x_min = g.start;
    copt.axisym = problem_is_axisym(p);
    copt.quad = o.quad;
    const std::vector<ConvergenceReport> reports =
        converge(profile, o.K, o.gamma, taus, copt);

    std::ostringstream csv;
    write_convergence_csv(csv, reports, cfg.dump());
    write_output(o.out, csv.str());
    write_output(o.json_out, convergence_json(reports, cfg.dump()) + "\n");

    bool any_ok = false;
    for (const std::string& note : reports[0].tau_notes)
        if (note.empty()) any_ok = true;
    return any_ok ? 0 : 2;
}

int cmd_eigen(const Options& o) {
    const HSDState s = make_hsd_state(o.rho, o.u, o.v, o.E, o.gamma);

    nlohmann::ordered_json cfg;
    cfg["command"] = "eigen";
    cfg["rho"] = o.rho;
    cfg["u"] = o.u;
    cfg["v"] = o.v;
    cfg["E"] = o.E;
    cfg["gamma"] = o.gamma;
    if (!o.out.empty()) cfg["out"] = o.out;
    emit_config(cfg);

    write_output(o.out, eigen_json(s, hsd_eigen(s), cfg.dump()) + "\n");
    return 0;
}

int cmd_admissible(const Options& o, bool tau_given) {
    const Problem p = parse_problem(o.problem);
    check_tau_flag(p, tau_given);
    if (!(o.domain_end > 0.0))
        throw BadParameter("--domain-end must be > 0");
    const auto profile = std::make_shared<const BodyProfile>(
        parse_profile(o.profile_spec, o.domain_end));

    nlohmann::ordered_json cfg = base_config("admissible", p, *profile, o);
    cfg.erase("rho_inf");
    cfg.erase("u_inf");
    if (!o.out.empty()) cfg["out"] = o.out;
    emit_config(cfg);

    AdmissibilityVerdict v;
    switch (p) {
        case Problem::A: v = admissible_A(*profile, o.tau, o.gamma, o.K); break;
        case Problem::B: v = admissible_B(*profile, o.gamma, o.K); break;
        case Problem::A3:
            v = admissible_A3(*profile, o.tau, o.gamma, o.K);
            break;
        case Problem::B3: v = admissible_B3(*profile, o.gamma, o.K); break;
    }

    nlohmann::ordered_json doc;
    doc["params"] = cfg;
    doc["admissible"] = v.admissible;
    doc["worst_margin"] = v.worst_margin;
    doc["worst_x"] = v.worst_x;
    write_output(o.out, doc.dump(2) + "\n");
    return v.admissible ? 0 : 2;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Measure-valued solutions of thin-body compressible flow: "
                 "closed-form construction, weak-form certification, and "
                 "similarity studies"};
    app.require_subcommand(1);
    Options o;
    std::string taus_arg;

    const auto add_flow = [&o](CLI::App* sub) {
        sub->add_option("--problem", o.problem, "A | B | A3 | B3")->required();
        sub->add_option("--profile", o.profile_spec,
                        "body profile, e.g. linear:a=1, power:a=1,p=2, "
                        "log:a=1, exp:a=1, sum:linear:a=1+power:a=0.5,p=2")
            ->required();
        sub->add_option("--K", o.K, "similarity parameter (default 1)");
        sub->add_option("--gamma", o.gamma, "adiabatic exponent (default 1.4)");
    };
    const auto add_dimensional = [&o](CLI::App* sub) {
        CLI::Option* tau =
            sub->add_option("--tau", o.tau,
                            "slenderness ratio (problems A and A3 only)");
        sub->add_option("--rho-inf", o.rho_inf,
                        "upstream density (default 1, problems A and A3)");
        sub->add_option("--u-inf", o.u_inf,
                        "upstream speed (default 1, problems A and A3)");
        return tau;
    };
    const auto add_quad = [&o](CLI::App* sub) {
        sub->add_option("--quad-abs-tol", o.quad.abs_tol,
                        "quadrature absolute tolerance (default 1e-12)");
        sub->add_option("--quad-rel-tol", o.quad.rel_tol,
                        "quadrature relative tolerance (default 1e-10)");
    };

    CLI::App* solve = app.add_subcommand(
        "solve", "evaluate the closed-form solution on a grid, emit CSV");
    add_flow(solve);
    CLI::Option* solve_tau = add_dimensional(solve);
    add_quad(solve);
    solve->add_option("--grid", o.grid, "output grid start:end:count")
        ->required();
    solve->add_option("--out", o.out, "CSV path (default: stdout)");

    CLI::App* verify = app.add_subcommand(
        "verify", "certify the weak form against sampled test functions");
    add_flow(verify);
    CLI::Option* verify_tau = add_dimensional(verify);
    add_quad(verify);
    verify->add_option("--domain-end", o.domain_end,
                       "body domain length (default 4)");
    verify->add_option("--bumps", o.bumps,
                       "number of sampled test functions (default 50)");
    verify->add_option("--seed", o.seed, "sampling seed (default 0)");
    verify->add_option("--residual-tol", o.residual_tol,
                       "max normalized residual for success (default 1e-6)");
    verify->add_option("--out", o.out, "JSON report path (default: stdout)");

    CLI::App* conv = app.add_subcommand(
        "converge",
        "sweep tau at fixed K against the scaled solution, emit CSV + rates");
    add_flow(conv);
    add_quad(conv);
    conv->add_option("--taus", taus_arg,
                     "comma-separated strictly decreasing list, e.g. "
                     "0.2,0.1,0.05,0.025")
        ->required();
    conv->add_option("--grid", o.grid, "sup-error grid start:end:count")
        ->required();
    conv->add_option("--out", o.out, "CSV path (default: stdout)");
    conv->add_option("--json-out", o.json_out,
                     "fitted-rate JSON path (default: stdout)");

    CLI::App* eigen = app.add_subcommand(
        "eigen", "eigenstructure of the scaled system at a state");
    eigen->add_option("--rho", o.rho, "density")->required();
    eigen->add_option("--u", o.u, "streamwise perturbation velocity")
        ->required();
    eigen->add_option("--v", o.v, "transverse velocity")->required();
    eigen->add_option("--E", o.E, "energy")->required();
    eigen->add_option("--gamma", o.gamma, "adiabatic exponent (default 1.4)");
    eigen->add_option("--out", o.out, "JSON path (default: stdout)");

    CLI::App* adm = app.add_subcommand(
        "admissible", "check the profile admissibility inequality");
    add_flow(adm);
    CLI::Option* adm_tau = add_dimensional(adm);
    adm->add_option("--domain-end", o.domain_end,
                    "body domain length (default 4)");
    adm->add_option("--out", o.out, "JSON path (default: stdout)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hyperslender");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (app.got_subcommand(solve))
            return cmd_solve(o, solve_tau->count() > 0);
        if (app.got_subcommand(verify))
            return cmd_verify(o, verify_tau->count() > 0);
        if (app.got_subcommand(conv)) return cmd_converge(o, taus_arg);
        if (app.got_subcommand(eigen)) return cmd_eigen(o);
        if (app.got_subcommand(adm))
            return cmd_admissible(o, adm_tau->count() > 0);
        throw BadParameter("no command given");
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const NotAdmissible& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}

} // namespace hyperslender
