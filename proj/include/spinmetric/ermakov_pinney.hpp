// ermakov_pinney.hpp — closed-form and numerical treatment of the nonlinear
// constraint  chi'' - (3/2) chi'^2/chi - (1/2) Phi^2 chi + lambda chi^3 = 0
// and its reduction to the Ermakov-Pinney equation sigma'' + (Phi^2/4) sigma
// = 1/sigma^3.

#pragma once

#include "spinmetric/spin_models.hpp"

#include <vector>

namespace spinmetric {

// General solution chi(t) = a / D(t),
// D(t) = c2 sin(Phi t) + c3 cos(Phi t) + branch * sqrt(1 + c2^2 + c3^2).
// D never vanishes; branch=+1 keeps chi > 0.
struct EPSolution {
    double c2 = 0.0;
    double c3 = 0.0;
    int branch = +1;
    double freq = 1.0;    // Phi
    double scale = 1.0;   // a (chi numerator)
    double cubic = 0.5;   // lambda, = Phi^2 / (2 a^2)

    double root() const;          // sqrt(1 + c2^2 + c3^2)
    double denom(double t) const; // D(t)
    double value(double t) const;
    double deriv(double t) const;
    double second_deriv(double t) const;
};

// Per-spin instance: (Phi, a, lambda) = (phi, phi, 1/2) for s=1/2 and
// (Phi, 2 Phi, 1/8) for s=1 and s=3/2. Requires |gamma| < 1.
EPSolution ep_solution(Spin s, double gamma, double c2, double c3, int branch = +1);

double chi_closed_form(const EPSolution& sol, double t);

// |chi'' - (3/2) chi'^2/chi - (1/2) Phi^2 chi + lambda chi^3| from analytic
// derivatives of the closed form.
double constraint_residual(const EPSolution& sol, double t);

// Ermakov-Pinney data: sigma(t) = [A sin^2(Phi t/2) + B cos^2(Phi t/2)
// + branch * 2C sin(Phi t/2) cos(Phi t/2)]^{1/2}, constrained AB - C^2 = 4/Phi^2.
struct EPConstantsABC {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    int branch = +1;
};

EPConstantsABC ep_constants(const EPSolution& sol);

// sigma(t); throws if (A,B,C) violate the constraint beyond 1e-9 or the
// radicand is not positive at t.
double ep_sigma(const EPConstantsABC& abc, double freq, double t);

// |sigma'' + (Phi^2/4) sigma - 1/sigma^3| via analytic derivatives.
double ep_sigma_residual(const EPConstantsABC& abc, double freq, double t);

// Classic RK4 on chi'' = (3/2) chi'^2/chi + (1/2) Phi^2 chi - lambda chi^3
// over a uniform grid; independent oracle for the closed forms. Throws
// "singular trajectory" if chi crosses zero.
std::vector<double> ep_numeric_solve(double chi0, double chidot0, double freq,
                                     double lambda, const std::vector<double>& grid);

}  // namespace spinmetric
