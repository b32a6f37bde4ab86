#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hyperslender/flow_state.hpp"
#include "hyperslender/geometry.hpp"
#include "hyperslender/measure.hpp"

namespace hyperslender {

/// The four flow problems with explicit measure solutions:
///   A  dimensional planar body y = tau b(x)
///   B  scaled (small-disturbance) planar body y = b(x)
///   A3 dimensional axisymmetric body r = tau f(x)
///   B3 scaled axisymmetric body r = f(x)
enum class Problem { A, B, A3, B3 };

const char* problem_name(Problem p);
Problem parse_problem(const std::string& s);
Flavor problem_flavor(Problem p);
bool problem_is_axisym(Problem p);
bool problem_is_scaled(Problem p);

/// Equation-role keys for the component measures entering the weak form.
/// mass/momx/momy/energy pair with (dphi/dx, dphi/dy); `pressure` is the
/// surface-pressure line weight (paired without the arclength factor, so the
/// normal components reduce to -g' w_p dx and +w_p dx); `pressure_zeroth` is
/// the upstream-pressure area term of the radial momentum balance (axisym
/// only; a zero measure for the planar problems).
enum class Component {
    mass_x,
    mass_y,
    momx_x,
    momx_y,
    momy_x,
    momy_y,
    energy_x,
    energy_y,
    pressure,
    pressure_zeroth,
};

const char* component_name(Component c);

struct SurfaceTrace {
    double u = 0.0;
    double v = 0.0;
    double E = 0.0;
};

struct SolveOptions {
    double x_max = 0.0; // <= 0: profile domain end
    double y_max = 0.0; // <= 0: default window margin above the curve
    QuadratureConfig quad{};
    int admissibility_grid = 2048;
};

/// An explicit Radon-measure solution: constant absolutely continuous
/// densities off the body plus weighted Dirac parts on the curve, together
/// with the surface traces and the surface pressure law. Equation index
/// order everywhere: 0 mass, 1 x-momentum, 2 y(or r)-momentum, 3 energy.
///
/// Immutable after construction; all callables are pure and safe to sample
/// concurrently (cumulative integrals are memoized behind a lock).
struct MeasureSolution {
    Problem problem = Problem::A;
    RegionSpec region;
    QuadratureConfig quad;

    double gamma = 0.0;
    double K = 0.0;
    // Dimensional parameters; tau = 0 marks the scaled problems.
    double rho_inf = 0.0;
    double u_inf = 0.0;
    double tau = 0.0;
    // Upstream pressure and energy in the problem's own variables.
    double p_ref = 0.0;
    double E_ref = 0.0;

    /// Dirac weights on the curve: wx[k] multiplies dphi/dx, wy[k] multiplies
    /// dphi/dy in equation k. For the axisymmetric problems these are the
    /// a/b weight pairs.
    std::array<std::function<double(double)>, 4> wx, wy;
    std::function<double(double)> w_rho;
    std::function<double(double)> w_p;
    std::function<SurfaceTrace(double)> trace;

    /// Constant absolutely continuous flux densities and inflow constants.
    std::array<double, 4> ac_x{}, ac_y{};
    std::array<double, 4> inflow_c{};
    double ac_rho = 0.0;

    /// Minimum of w_p over a construction-time grid (the scaled-axisym
    /// admissibility only guarantees w_p >= 0, so violations are recorded
    /// here rather than thrown).
    double wp_grid_min = 0.0;
    double wp_grid_min_x = 0.0;

    RadonMeasure component(Component c) const;
    std::map<Component, RadonMeasure> components() const;
    /// The density measure (constant part + singular surface weight).
    RadonMeasure density_measure() const;
};

MeasureSolution solve_A(std::shared_ptr<const BodyProfile> profile,
                        const UpstreamState& state,
                        const SolveOptions& opt = {});
MeasureSolution solve_B(std::shared_ptr<const BodyProfile> profile,
                        const ScaledUpstreamState& state,
                        const SolveOptions& opt = {});
MeasureSolution solve_A3(std::shared_ptr<const BodyProfile> profile,
                         const UpstreamState& state,
                         const SolveOptions& opt = {});
MeasureSolution solve_B3(std::shared_ptr<const BodyProfile> profile,
                         const ScaledUpstreamState& state,
                         const SolveOptions& opt = {});

/// Surface force per unit curve length, w_p times the outward normal
/// (g', -1)/sqrt(1+g'^2), i.e. the pressure push on the body.
std::array<double, 2> pressure_force_density(const MeasureSolution& sol,
                                             double x);

/// One row per grid point:
///   x, w_rho, w_m0, w_n0, w_m1, w_n1, w_m2, w_n2, w_m3, w_n3, w_p,
///   u_trace, v_trace, E_trace
/// (a/b column names for the axisymmetric problems). Values use %.17g.
/// A nonempty config_comment is emitted first as "# config: <...>".
void write_solution_csv(std::ostream& os, const MeasureSolution& sol,
                        const std::vector<double>& grid,
                        const std::string& config_comment = "");

} // namespace hyperslender
