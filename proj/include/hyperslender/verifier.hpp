#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperslender/closed_forms.hpp"
#include "hyperslender/measure.hpp"

namespace hyperslender {

/// Residual of one conservation equation against one test function.
/// raw = |sum of all pairing terms|; normalized divides by the sum of the
/// total-variation magnitudes of the same terms (plus a 1e-30 floor), making
/// the certificate invariant under rescaling of either the solution or the
/// test function.
struct BumpResidual {
    TestFunction bump;
    double raw = 0.0;
    double normalized = 0.0;
};

struct ResidualReport {
    Problem problem = Problem::A;
    std::string equation_id; // mass, mom_x, mom_y (mom_r when axisym), energy
    std::vector<BumpResidual> residuals;
    double max_normalized = 0.0;
};

/// Assembles every weak-form pairing per equation (flux derivatives against
/// the absolutely continuous and singular parts, the surface-pressure normal
/// terms, the upstream inflow trace, and the zeroth-order pressure area term
/// of the radial balance) and reports residuals for each bump. Parallel over
/// bumps; reports are ordered by bump index regardless of scheduling.
std::vector<ResidualReport> verify_weak(const MeasureSolution& sol,
                                        const std::vector<TestFunction>& bumps);

/// Deterministic pseudo-random bump batch: cycling center classes (on the
/// curve, in the open interior, straddling the inflow axis x = 0), radii
/// uniform in scale_range, all supports inside the far window edges.
std::vector<TestFunction> sample_bumps(
    const RegionSpec& region, int n, std::uint64_t seed,
    std::array<double, 2> scale_range = {0.15, 0.45});

struct GridCheckReport {
    double max_rel_err = 0.0;
    double worst_x = 0.0;
    std::string worst_label;
};

/// Pointwise nonlinear constraints tying every Dirac weight to the surface
/// traces times the singular density weight (the Radon-Nikodym relations of
/// the solution concept), sampled on a uniform grid.
GridCheckReport check_rn_constraints(const MeasureSolution& sol,
                                     int grid_n = 512);

/// Defining first-order equations of the weight functions, checked with
/// 5-point central differences at interior grid points; residuals relative
/// to the grid maximum of each equation's right-hand side.
GridCheckReport check_weight_odes(const MeasureSolution& sol, int grid_n = 512);

/// Change-of-variables identity linking the dimensional density measure to
/// the scaled-coordinate pairing, one result per bump (bumps live in scaled
/// coordinates). axisym switches to the axisymmetric construction.
std::vector<TauFactorResult> verify_tau_identity(
    std::shared_ptr<const BodyProfile> profile, const UpstreamState& state,
    const std::vector<TestFunction>& bumps, bool axisym = false,
    const SolveOptions& opt = {});

bool verification_passes(const std::vector<ResidualReport>& reports,
                         double threshold);

/// JSON document with the equation residual tables, the per-equation maxima,
/// and the pass/fail verdict at the threshold. params_json, when nonempty,
/// must be a JSON object and is embedded under "params".
std::string verification_json(const std::vector<ResidualReport>& reports,
                              double threshold,
                              const std::string& params_json = "");

} // namespace hyperslender
