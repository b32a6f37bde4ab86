#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "hyperslender/flow_state.hpp"
#include "hyperslender/geometry.hpp"
#include "hyperslender/quadrature.hpp"

namespace hyperslender {

/// Surface traces of the dimensional solutions expressed in similarity
/// variables. Evaluated through cancellation-free cumulative integrals (the
/// (u - u_inf)/tau^2 subtraction is done analytically), so accuracy is
/// uniform as tau -> 0.
struct SimilarityTrace {
    double u = 0.0;
    double v = 0.0;
    double E = 0.0;
};

/// Planar body y = tau b(x). x_bar = 0 uses the analytic tip limit.
SimilarityTrace scaled_trace_A(const BodyProfile& profile, double K,
                               double gamma, double tau, double x_bar,
                               const QuadratureConfig& cfg = {});

/// Axisymmetric body r = tau f(x).
SimilarityTrace scaled_trace_A3(const BodyProfile& profile, double K,
                                double gamma, double tau, double x_bar,
                                const QuadratureConfig& cfg = {});

enum class Quantity {
    u_trace,
    v_trace,
    E_trace,
    density_weight_ratio,
    pressure_weight,
};

const char* quantity_name(Quantity q);

struct ConvergenceReport {
    Quantity quantity = Quantity::u_trace;
    std::vector<double> taus;
    std::vector<double> sup_errors; // NaN where the solve failed at that tau
    double fitted_rate = 0.0;       // log-log slope, largest tau excluded
    std::vector<double> grid;
    std::vector<std::string> tau_notes; // "" when the tau succeeded
};

struct ConvergenceOptions {
    int grid_n = 256;
    double x_min = 1e-3; // sup grid starts here; the tip limit is separate
    bool axisym = false;
    QuadratureConfig quad{};
};

/// Sweeps tau at fixed (K, gamma): solves the dimensional problem per tau,
/// maps its traces and boundary weights to similarity variables, and takes
/// sup-grid errors against the scaled solution. taus must be strictly
/// decreasing in (0, 1). A tau failing the admissibility inequality is
/// recorded in tau_notes with NaN errors and the sweep continues. Returns one
/// report per Quantity, in enum order.
std::vector<ConvergenceReport> converge(
    std::shared_ptr<const BodyProfile> profile, double K, double gamma,
    const std::vector<double>& taus, const ConvergenceOptions& opt = {});

/// Rows `tau, sup_err_u, sup_err_v, sup_err_E, sup_err_density_ratio,
/// sup_err_wp`; config_comment, when nonempty, becomes a leading
/// `# config: ...` line.
void write_convergence_csv(std::ostream& os,
                           const std::vector<ConvergenceReport>& reports,
                           const std::string& config_comment = "");

/// Fitted rates and the per-tau error table as a JSON document. params_json,
/// when nonempty, must be a JSON object and is embedded under "params".
std::string convergence_json(const std::vector<ConvergenceReport>& reports,
                             const std::string& params_json = "");

/// State of the scaled small-disturbance system in the primitive variables
/// (rho, u, v, E), all in similarity form.
struct HSDState {
    double rho = 1.0;
    double u = 0.0;
    double v = 0.0;
    double E = 0.0;
    double gamma = 1.4;

    double internal() const { return E - 2.0 * u - v * v; }
    double sound() const;    // sqrt((gamma - 1) internal / 2)
    double pressure() const; // (gamma - 1)/(2 gamma) rho internal
};

/// Validates rho > 0 and gamma > 1 (BadParameter) and E - 2u - v^2 > 0
/// (NonHyperbolic: the sound speed would be imaginary).
HSDState make_hsd_state(double rho, double u, double v, double E,
                        double gamma);

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Jacobians, with respect to the primitive variables, of the streamwise
/// density vector W = (rho, rho u + p, rho v, rho E) and the transverse flux
/// H = (rho v, rho u v, rho v^2 + p, rho E v), where
/// p = (gamma - 1)/(2 gamma) rho (E - 2u - v^2).
struct FluxJacobians {
    Mat4 W;
    Mat4 H;
};

FluxJacobians hsd_flux_jacobians(const HSDState& s);

double det4(const Mat4& m);

/// |det(lambda W' - H')| / ((rho^3/gamma) max(1, |v| + c)^4): characteristic
/// polynomial residual relative to its leading-coefficient scale.
double char_poly_residual(const HSDState& s, double lambda);

/// lambda_i for field_index in 1..4: (v - c, v, v, v + c).
double eigenvalue(const HSDState& s, int field_index);

/// Analytic d lambda_i / d(rho, u, v, E).
std::array<double, 4> eigenvalue_gradient(const HSDState& s, int field_index);

struct CharField {
    double grad_dot_r = 0.0;          // finite-difference nabla(lambda) . r
    bool linearly_degenerate = false; // |grad_dot_r| <= 1e-6
};

/// Central differences with relative step 1e-6 on each primitive variable,
/// dotted with the analytic eigenvector of the unperturbed state.
CharField characteristic_field_class(const HSDState& s, int field_index);

struct EigenReport {
    std::array<double, 4> eigenvalues;
    Mat4 eigenvectors; // rows r1..r4
    std::array<CharField, 4> fields;
};

/// Analytic eigendecomposition of the generalized problem
/// (lambda W' - H') r = 0 plus the field classifications.
EigenReport hsd_eigen(const HSDState& s);

/// max_i ||(lambda_i W' - H') r_i||_inf / (||lambda_i W' - H'||_inf
/// ||r_i||_inf): how well the reported pairs annihilate.
double eigen_residual(const HSDState& s, const EigenReport& rep);

std::string eigen_json(const HSDState& s, const EigenReport& rep,
                       const std::string& params_json = "");

} // namespace hyperslender
