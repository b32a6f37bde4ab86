#include "hyperslender/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <string>

namespace hyperslender {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
// Abscissae/weights as tabulated in QUADPACK (dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double value;    // Kronrod estimate
    double error;    // QUADPACK-style scaled error estimate
    double resabs;   // int |f|
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double hlgth = 0.5 * (b - a);
    const double centr = 0.5 * (a + b);

    double fv[15];
    const double fc = f(centr);
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = hlgth * kXgk[j];
        fv[j] = f(centr - dx);
        fv[14 - j] = f(centr + dx);
    }

    double resk = kWgk[7] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        resk += kWgk[j] * (fv[j] + fv[14 - j]);
        resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    }
    for (int j = 0; j < 3; ++j) {
        const int i = 2 * j + 1;
        resg += kWg[j] * (fv[i] + fv[14 - i]);
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));

    resk *= hlgth;
    resg *= hlgth;
    resabs *= std::abs(hlgth);
    resasc *= std::abs(hlgth);

    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    return {resk, err, resabs};
}

struct Interval {
    double a, b, value, error, resabs;
    long seq; // insertion index; deterministic tie-break
};

struct WorstFirst {
    bool operator()(const Interval& l, const Interval& r) const {
        if (l.error != r.error) return l.error < r.error;
        return l.seq > r.seq;
    }
};

// Neumaier compensated summation.
struct Accum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

} // namespace

IntegralResult integrate_1d(const std::function<double(double)>& g, double a,
                            double b, const QuadratureConfig& cfg) {
    if (!(a <= b)) throw BadParameter("integrate_1d: interval endpoints out of order");
    if (a == b) return {0.0, 0.0, 0};

    std::priority_queue<Interval, std::vector<Interval>, WorstFirst> heap;
    long seq = 0;
    PanelResult first = gk15(g, a, b);
    heap.push({a, b, first.value, first.error, first.resabs, seq++});
    double total_value = first.value;
    double total_error = first.error;
    double total_resabs = first.resabs;
    int splits = 0;

    const double eps = std::numeric_limits<double>::epsilon();
    const auto tol = [&](double v) {
        return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v));
    };
    // Each panel's error estimate is floored at 50*eps*int|f|, so the summed
    // estimate can never drop below that times the total variation; accept the
    // result once it reaches that roundoff plateau (cancellation-dominated
    // integrals hit it with a tiny value but O(1) int|f|).
    const auto roundoff_floor = [&]() { return 100.0 * eps * total_resabs; };

    while (total_error > tol(total_value) && total_error > roundoff_floor()) {
        if (splits >= cfg.max_subdivisions) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "integrate_1d: error %.3e above tolerance %.3e after %d subdivisions",
                          total_error, tol(total_value), splits);
            throw NoConvergence(buf);
        }
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw NoConvergence("integrate_1d: interval no longer splittable at x = " +
                                std::to_string(worst.a));
        PanelResult left = gk15(g, worst.a, mid);
        PanelResult right = gk15(g, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        total_resabs += left.resabs + right.resabs - worst.resabs;
        heap.push({worst.a, mid, left.value, left.error, left.resabs, seq++});
        heap.push({mid, worst.b, right.value, right.error, right.resabs, seq++});
        ++splits;
    }

    // Canonical left-to-right compensated sum, independent of heap layout.
    std::vector<Interval> parts;
    parts.reserve(heap.size());
    while (!heap.empty()) {
        parts.push_back(heap.top());
        heap.pop();
    }
    std::sort(parts.begin(), parts.end(),
              [](const Interval& l, const Interval& r) { return l.a < r.a; });
    Accum acc;
    double err = 0.0;
    for (const Interval& p : parts) {
        acc.add(p.value);
        err += p.error;
    }
    return {acc.get(), err, splits};
}

double integrate_panels(const std::function<double(double)>& g,
                        const std::vector<double>& breakpoints,
                        const QuadratureConfig& cfg) {
    Accum acc;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i], b = breakpoints[i + 1];
        if (b - a <= 0.0) continue;
        acc.add(integrate_1d(g, a, b, cfg).value);
    }
    return acc.get();
}

double H_of(const BodyProfile& profile, double tau, double x,
            const QuadratureConfig& cfg) {
    if (x == 0.0) return 0.0;
    profile.eval(x); // domain check
    const double t2 = tau * tau;
    auto g = [&](double t) {
        const double db = profile.eval(t).db;
        return db / std::sqrt(1.0 + t2 * db * db);
    };
    return integrate_1d(g, 0.0, x, cfg).value;
}

double M_of(const BodyProfile& profile, double tau, double x,
            const QuadratureConfig& cfg) {
    if (x == 0.0) return 0.0;
    profile.eval(x);
    const double t2 = tau * tau;
    auto g = [&](double t) {
        const ProfileEval e = profile.eval(t);
        return e.b * e.db / std::sqrt(1.0 + t2 * e.db * e.db);
    };
    return integrate_1d(g, 0.0, x, cfg).value;
}

namespace {

std::vector<double> cumulative(const std::function<double(double)>& g,
                               const std::vector<double>& grid,
                               const QuadratureConfig& cfg) {
    if (grid.empty() || grid.front() != 0.0)
        throw BadParameter("cumulative integral grid must start at 0");
    std::vector<double> out(grid.size());
    Accum acc;
    out[0] = 0.0;
    for (size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] < grid[i - 1])
            throw BadParameter("cumulative integral grid must be increasing");
        if (grid[i] > grid[i - 1])
            acc.add(integrate_1d(g, grid[i - 1], grid[i], cfg).value);
        out[i] = acc.get();
    }
    return out;
}

} // namespace

std::vector<double> H_grid(const BodyProfile& profile, double tau,
                           const std::vector<double>& grid,
                           const QuadratureConfig& cfg) {
    const double t2 = tau * tau;
    return cumulative(
        [&](double t) {
            const double db = profile.eval(t).db;
            return db / std::sqrt(1.0 + t2 * db * db);
        },
        grid, cfg);
}

std::vector<double> M_grid(const BodyProfile& profile, double tau,
                           const std::vector<double>& grid,
                           const QuadratureConfig& cfg) {
    const double t2 = tau * tau;
    return cumulative(
        [&](double t) {
            const ProfileEval e = profile.eval(t);
            return e.b * e.db / std::sqrt(1.0 + t2 * e.db * e.db);
        },
        grid, cfg);
}

BumpValue TestFunction::eval(double x, double y) const {
    const double sx = (x - x0) / rx;
    const double sy = (y - y0) / ry;
    const double s = sx * sx + sy * sy;
    const double t = 1.0 - s;
    if (t <= 0.0) return {0.0, 0.0, 0.0};
    const double tk1 = amplitude * std::pow(t, k - 1);
    const double phi = tk1 * t;
    const double common = -2.0 * k * tk1;
    return {phi, common * (x - x0) / (rx * rx), common * (y - y0) / (ry * ry)};
}

double TestFunction::chord_halfwidth(double x) const {
    const double sx = (x - x0) / rx;
    const double t = 1.0 - sx * sx;
    if (t < 0.0) return -1.0;
    return ry * std::sqrt(t);
}

TestFunction make_bump(double x0, double y0, double rx, double ry, int k) {
    if (!(rx > 0.0) || !(ry > 0.0))
        throw BadParameter("make_bump: radii must be positive");
    if (k < 3) throw BadParameter("make_bump: order k must be >= 3");
    return {x0, y0, rx, ry, k};
}

} // namespace hyperslender
