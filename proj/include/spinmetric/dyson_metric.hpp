// dyson_metric.hpp — closed-form Dyson maps eta(t), metrics rho(t) = eta^2,
// Hermitian counterparts h(t) = eta H eta^-1 + i hbar eta' eta^-1, the
// direct-route metric closed forms, and the constant matching that makes the
// two routes coincide.

#pragma once

#include "spinmetric/ermakov_pinney.hpp"
#include "spinmetric/spin_models.hpp"

#include <functional>
#include <vector>

namespace spinmetric {

struct DysonSpec {
    ModelParams params;
    double c1 = 1.0;
    EPSolution ep;
};

// Validates c1 != 0, |gamma| < 1; branch -1 is constructible but rejected by
// dyson_map (fractional powers of chi need chi > 0).
DysonSpec make_dyson_spec(const ModelParams& params, double c1, double c2, double c3,
                          int branch = +1);

// Hermitian eta(t), assembled from the closed forms with analytic chi, chi'.
Matrix dyson_map(const DysonSpec& spec, double t);

// rho(t) = eta(t)^2; Hermitian positive-definite for |gamma| < 1.
Matrix metric(const DysonSpec& spec, double t);

// eta H eta^-1 + i hbar eta' eta^-1 with central-difference eta'.
Matrix hermitian_counterpart(const DysonSpec& spec, double t, double fd_step = kDefaultFdStep);

// The closed-form target h(t) = -1/2 (omega_s I + chi(t) Z_s):
// (omega, sigma_z) for s=1/2, (omega, S_z) for s=1, (omega/2, S_z) for s=3/2;
// the identity coefficient is fixed by Tr h = Tr H.
Matrix hermitian_target(const DysonSpec& spec, double t);

// ||H^dag rho - rho H - i hbar d rho/dt||_max with central-difference d/dt.
double quasi_hermiticity_residual(const Matrix& H, const std::function<Matrix(double)>& rho,
                                  double t, double fd_step = kDefaultFdStep, double hbar = 1.0);

struct MetricConstants {
    std::vector<double> b;  // 4 entries (s=1/2) or 9 entries (s=1)
};

// Direct solution of the quasi-Hermiticity relation with free integration
// constants; s=3/2 unsupported (no closed-form metric route there).
Matrix metric_closed_form(const MetricConstants& constants, const ModelParams& params, double t);

// b(c1, c2, c3, gamma) making metric_closed_form coincide with eta^2.
MetricConstants match_constants(const DysonSpec& spec);

// Time-independent det rho(t) in closed form.
double metric_determinant_closed_form(const DysonSpec& spec);

// Energy operator Htilde = H + i hbar eta^-1 eta' (central-difference eta');
// equals eta^-1 h eta.
Matrix energy_operator(const DysonSpec& spec, double t, double fd_step = kDefaultFdStep);

}  // namespace spinmetric
