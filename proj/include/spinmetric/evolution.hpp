// evolution.hpp — state propagation in both representations, metric inner
// products, and the energy-expectation identities.

#pragma once

#include "spinmetric/dyson_metric.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spinmetric {

struct StateTrajectory {
    enum class Rep { non_hermitian, hermitian };
    std::vector<double> times;
    std::vector<Vector> states;
    Rep rep = Rep::non_hermitian;
};

struct ObservableSeries {
    std::vector<double> times;
    std::vector<Complex> values;
    std::string label;
};

// Sum_k coeffs[k] Psi_k exp(-i E_k t / hbar); coefficients ordered like
// closed_form_spectrum (descending k).
Vector closed_form_state(const ModelParams& params, const std::vector<Complex>& coeffs,
                         double t);

// phi = eta(t) psi
Vector map_state(const DysonSpec& spec, const Vector& psi, double t);

// N_k with  N_k <Psi_k| rho |Psi_k> = 1. Closed form for s=1/2; numeric
// (time-independent) for s=1; unsupported for s=3/2.
double normalization_constant(const DysonSpec& spec, int k);

// sqrt(N_k) eta(t) Psi_k(t) when normalized, else eta(t) Psi_k(t).
Vector map_eigenstate(const DysonSpec& spec, int k, double t, bool normalized = true);

// <phi_-|phi_+> = gamma (-c3 + i c2) / sqrt(phi^2 + c2^2 + c3^2)  (s=1/2);
// <phi_+|phi_-> is its conjugate.
Complex eigenstate_overlap(const DysonSpec& spec);

// RK4 for i hbar psi' = G(t) psi on a uniform grid.
StateTrajectory rk4_propagate(const std::function<Matrix(double)>& generator,
                              const Vector& psi0, double t0, double dt, int steps,
                              double hbar = 1.0);

// <a| rho |b>
Complex metric_inner_product(const Vector& a, const Vector& b, const Matrix& rho);

// Multiply by the unit phase that best aligns v with ref.
Vector phase_align(const Vector& v, const Vector& ref);

struct EnergyCheck {
    double lhs = 0.0;                 // <phi|h phi>
    double rhs = 0.0;                 // N <Psi|rho Htilde Psi>
    std::optional<double> closed;     // closed form, s=1/2 only
};

EnergyCheck energy_expectation_check(const DysonSpec& spec, int k, double t,
                                     double fd_step = kDefaultFdStep);

}  // namespace spinmetric
