#include "hyperslender/geometry.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperslender/quadrature.hpp"

namespace hyperslender {

namespace {

void check_finite_coeff(double a) {
    if (!std::isfinite(a) || a == 0.0)
        throw BadParameter("profile coefficient a must be finite and nonzero");
}

ProfileEval eval_term(const ProfileTerm& t, double x) {
    switch (t.family) {
    case ProfileFamily::linear:
        return {t.a * x, t.a, 0.0};
    case ProfileFamily::power: {
        const double p = t.p;
        if (p == 1.0) return {t.a * x, t.a, 0.0};
        const double xp2 = std::pow(x, p - 2.0);
        const double xp1 = xp2 * x;
        return {t.a * xp1 * x, t.a * p * xp1, t.a * p * (p - 1.0) * xp2};
    }
    case ProfileFamily::exponential: {
        const double e = std::exp(x);
        return {t.a * (e - 1.0), t.a * e, t.a * e};
    }
    case ProfileFamily::logarithmic: {
        const double r = 1.0 / (1.0 + x);
        return {t.a * std::log1p(x), t.a * r, -t.a * r * r};
    }
    case ProfileFamily::sum:
        throw BadParameter("sum is not a primitive profile family");
    }
    throw BadParameter("unknown profile family");
}

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string family_name(ProfileFamily f) {
    switch (f) {
    case ProfileFamily::linear: return "linear";
    case ProfileFamily::power: return "power";
    case ProfileFamily::exponential: return "exp";
    case ProfileFamily::logarithmic: return "log";
    case ProfileFamily::sum: return "sum";
    }
    return "?";
}

double parse_number(std::string_view s, std::string_view what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw BadParameter("cannot parse " + std::string(what) + " value '" +
                           std::string(s) + "'");
    return v;
}

ProfileTerm parse_primitive(std::string_view token) {
    std::string_view fam = token;
    std::string_view params;
    if (const size_t colon = token.find(':'); colon != std::string_view::npos) {
        fam = token.substr(0, colon);
        params = token.substr(colon + 1);
    }

    ProfileTerm term;
    if (fam == "linear") term.family = ProfileFamily::linear;
    else if (fam == "power") term.family = ProfileFamily::power;
    else if (fam == "exp" || fam == "exponential") term.family = ProfileFamily::exponential;
    else if (fam == "log" || fam == "logarithmic") term.family = ProfileFamily::logarithmic;
    else
        throw BadParameter("unknown profile family '" + std::string(fam) + "'");
    if (term.family == ProfileFamily::power) term.p = 2.0;

    while (!params.empty()) {
        const size_t comma = params.find(',');
        std::string_view kv = params.substr(0, comma);
        params = comma == std::string_view::npos ? std::string_view{}
                                                 : params.substr(comma + 1);
        const size_t eq = kv.find('=');
        if (eq == std::string_view::npos)
            throw BadParameter("profile parameter '" + std::string(kv) +
                               "' is not key=value");
        const std::string_view key = kv.substr(0, eq);
        const std::string_view val = kv.substr(eq + 1);
        if (key == "a") {
            term.a = parse_number(val, "a");
        } else if (key == "p") {
            if (term.family != ProfileFamily::power)
                throw BadParameter("parameter p only applies to the power family");
            term.p = parse_number(val, "p");
        } else {
            throw BadParameter("unknown profile parameter '" + std::string(key) + "'");
        }
    }
    return term;
}

} // namespace

BodyProfile BodyProfile::make(std::vector<ProfileTerm> terms, double domain_end,
                              int monotone_grid) {
    if (terms.empty()) throw BadParameter("profile needs at least one term");
    if (!(domain_end > 0.0) || !std::isfinite(domain_end))
        throw BadParameter("profile domain_end must be positive and finite");
    if (monotone_grid < 2)
        throw BadParameter("monotone check grid must have at least 2 points");
    for (const ProfileTerm& t : terms) {
        check_finite_coeff(t.a);
        if (t.family == ProfileFamily::sum)
            throw BadParameter("sum is not a primitive profile family");
        if (t.family == ProfileFamily::power) {
            if (!std::isfinite(t.p) || (t.p != 1.0 && t.p < 2.0))
                throw BadExponent("power exponent must be 1 or >= 2, got " + fmt(t.p));
        }
    }

    BodyProfile profile;
    profile.terms_ = std::move(terms);
    profile.domain_end_ = domain_end;

    for (int i = 1; i <= monotone_grid; ++i) {
        const double x = domain_end * static_cast<double>(i) / monotone_grid;
        double db = 0.0;
        for (const ProfileTerm& t : profile.terms_) db += eval_term(t, x).db;
        if (!(db > 0.0)) {
            std::ostringstream os;
            os << "profile slope " << db << " at x = " << x
               << " is not strictly positive";
            throw NonMonotone(os.str());
        }
    }
    return profile;
}

ProfileEval BodyProfile::eval(double x) const {
    if (!(x >= 0.0) || x > domain_end_) {
        std::ostringstream os;
        os << "profile evaluated at x = " << x << " outside [0, " << domain_end_
           << "]";
        throw OutOfDomain(os.str());
    }
    ProfileEval out{0.0, 0.0, 0.0};
    for (const ProfileTerm& t : terms_) {
        const ProfileEval e = eval_term(t, x);
        out.b += e.b;
        out.db += e.db;
        out.ddb += e.ddb;
    }
    return out;
}

std::string BodyProfile::describe() const {
    std::string out;
    if (terms_.size() > 1) out = "sum:";
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += '+';
        const ProfileTerm& t = terms_[i];
        out += family_name(t.family);
        out += ":a=" + fmt(t.a);
        if (t.family == ProfileFamily::power) out += ",p=" + fmt(t.p);
    }
    return out;
}

BodyProfile make_profile(ProfileFamily family, double a, double domain_end,
                         double p, int monotone_grid) {
    if (family == ProfileFamily::sum)
        throw BadParameter("make_profile expects a primitive family");
    return BodyProfile::make({ProfileTerm{family, a, p}}, domain_end,
                             monotone_grid);
}

BodyProfile parse_profile(std::string_view spec, double domain_end,
                          int monotone_grid) {
    std::vector<ProfileTerm> terms;
    if (spec.rfind("sum:", 0) == 0) {
        std::string_view rest = spec.substr(4);
        if (rest.empty()) throw BadParameter("sum profile needs at least one term");
        while (!rest.empty()) {
            const size_t plus = rest.find('+');
            terms.push_back(parse_primitive(rest.substr(0, plus)));
            rest = plus == std::string_view::npos ? std::string_view{}
                                                  : rest.substr(plus + 1);
        }
    } else {
        terms.push_back(parse_primitive(spec));
    }
    return BodyProfile::make(std::move(terms), domain_end, monotone_grid);
}

namespace {

void check_flow_params(double gamma, double K) {
    if (!(gamma > 1.0)) throw BadParameter("gamma must be > 1");
    if (!(K > 0.0)) throw BadParameter("similarity parameter K must be > 0");
}

void check_tau(double tau) {
    if (!(tau > 0.0) || !(tau < 1.0))
        throw BadParameter("slenderness ratio tau must lie in (0, 1)");
}

std::vector<double> uniform_grid(double X, int n) {
    if (n < 2) throw BadParameter("admissibility grid must have at least 2 points");
    std::vector<double> g(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) g[i] = X * static_cast<double>(i) / n;
    g.back() = X;
    return g;
}

} // namespace

AdmissibilityVerdict admissible_A(const BodyProfile& profile, double tau,
                                  double gamma, double K, int grid_points) {
    check_flow_params(gamma, K);
    check_tau(tau);
    const std::vector<double> grid = uniform_grid(profile.domain_end(), grid_points);
    const std::vector<double> H = H_grid(profile, tau, grid);
    AdmissibilityVerdict v;
    double worst = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < grid.size(); ++i) {
        const ProfileEval e = profile.eval(grid[i]);
        const double A = 1.0 + tau * tau * e.db * e.db;
        const double sA = std::sqrt(A);
        const double margin =
            A * sA / (gamma * K * K) + e.ddb * H[i] + e.db * e.db * sA;
        if (margin < worst) {
            worst = margin;
            v.worst_x = grid[i];
        }
    }
    v.worst_margin = worst;
    v.admissible = worst > 0.0;
    return v;
}

AdmissibilityVerdict admissible_B(const BodyProfile& profile, double gamma,
                                  double K, int grid_points) {
    check_flow_params(gamma, K);
    const std::vector<double> grid = uniform_grid(profile.domain_end(), grid_points);
    AdmissibilityVerdict v;
    double worst = std::numeric_limits<double>::infinity();
    for (double x : grid) {
        const ProfileEval e = profile.eval(x);
        const double margin = 1.0 / (gamma * K * K) + e.db * e.db + e.b * e.ddb;
        if (margin < worst) {
            worst = margin;
            v.worst_x = x;
        }
    }
    v.worst_margin = worst;
    v.admissible = worst > 0.0;
    return v;
}

AdmissibilityVerdict admissible_A3(const BodyProfile& profile, double tau,
                                   double gamma, double K, int grid_points) {
    check_flow_params(gamma, K);
    check_tau(tau);
    const std::vector<double> grid = uniform_grid(profile.domain_end(), grid_points);
    const std::vector<double> M = M_grid(profile, tau, grid);
    AdmissibilityVerdict v;
    double worst = std::numeric_limits<double>::infinity();
    // The expression vanishes identically at the tip; scan interior points.
    for (size_t i = 1; i < grid.size(); ++i) {
        const ProfileEval e = profile.eval(grid[i]);
        const double A = 1.0 + tau * tau * e.db * e.db;
        const double sA = std::sqrt(A);
        const double margin = e.b * A * sA + gamma * K * K * e.ddb * M[i] +
                              sA * e.b * e.db * e.db;
        if (margin < worst) {
            worst = margin;
            v.worst_x = grid[i];
        }
    }
    v.worst_margin = worst;
    v.admissible = worst >= 0.0;
    return v;
}

AdmissibilityVerdict admissible_B3(const BodyProfile& profile, double gamma,
                                   double K, int grid_points) {
    check_flow_params(gamma, K);
    const std::vector<double> grid = uniform_grid(profile.domain_end(), grid_points);
    AdmissibilityVerdict v;
    double worst = std::numeric_limits<double>::infinity();
    // Strict positivity is required for x > 0 only; the tip value is always 0.
    for (size_t i = 1; i < grid.size(); ++i) {
        const ProfileEval e = profile.eval(grid[i]);
        const double margin =
            2.0 * e.b +
            gamma * K * K * (2.0 * e.b * e.db * e.db + e.b * e.b * e.ddb);
        if (margin < worst) {
            worst = margin;
            v.worst_x = grid[i];
        }
    }
    v.worst_margin = worst;
    v.admissible = worst > 0.0;
    return v;
}

} // namespace hyperslender
