#include "spinmetric/ermakov_pinney.hpp"

#include <cmath>
#include <stdexcept>

namespace spinmetric {

double EPSolution::root() const { return std::sqrt(1.0 + c2 * c2 + c3 * c3); }

double EPSolution::denom(double t) const {
    return c2 * std::sin(freq * t) + c3 * std::cos(freq * t) + branch * root();
}

double EPSolution::value(double t) const { return scale / denom(t); }

double EPSolution::deriv(double t) const {
    const double d = denom(t);
    const double dd = freq * (c2 * std::cos(freq * t) - c3 * std::sin(freq * t));
    return -scale * dd / (d * d);
}

double EPSolution::second_deriv(double t) const {
    const double d = denom(t);
    const double dd = freq * (c2 * std::cos(freq * t) - c3 * std::sin(freq * t));
    const double ddd = -freq * freq * (d - branch * root());
    return scale * (2.0 * dd * dd - d * ddd) / (d * d * d);
}

EPSolution ep_solution(Spin s, double gamma, double c2, double c3, int branch) {
    if (branch != +1 && branch != -1) {
        throw std::invalid_argument("ep_solution: branch must be +1 or -1");
    }
    if (std::abs(gamma) >= 1.0) {
        throw std::invalid_argument("ep_solution: requires |gamma| < 1");
    }
    ModelParams p;
    p.spin = s;
    p.gamma = gamma;
    EPSolution sol;
    sol.c2 = c2;
    sol.c3 = c3;
    sol.branch = branch;
    sol.freq = p.frequency();
    sol.scale = (s == Spin::half) ? sol.freq : 2.0 * sol.freq;
    sol.cubic = sol.freq * sol.freq / (2.0 * sol.scale * sol.scale);
    return sol;
}

double chi_closed_form(const EPSolution& sol, double t) { return sol.value(t); }

double constraint_residual(const EPSolution& sol, double t) {
    const double x = sol.value(t);
    const double xd = sol.deriv(t);
    const double xdd = sol.second_deriv(t);
    return std::abs(xdd - 1.5 * xd * xd / x - 0.5 * sol.freq * sol.freq * x +
                    sol.cubic * x * x * x);
}

EPConstantsABC ep_constants(const EPSolution& sol) {
    EPConstantsABC abc;
    const double r = sol.root();
    abc.a = 2.0 * (-sol.c3 + sol.branch * r) / sol.freq;
    abc.b = 2.0 * (sol.c3 + sol.branch * r) / sol.freq;
    abc.c = 2.0 * sol.branch * sol.c2 / sol.freq;
    abc.branch = sol.branch;
    return abc;
}

namespace {

// radicand A sin^2 + B cos^2 + branch 2C sin cos, arguments freq*t/2
double sigma_radicand(const EPConstantsABC& abc, double freq, double t) {
    const double s = std::sin(freq * t / 2.0);
    const double c = std::cos(freq * t / 2.0);
    return abc.a * s * s + abc.b * c * c + abc.branch * 2.0 * abc.c * s * c;
}

void check_ep_constraint(const EPConstantsABC& abc, double freq) {
    const double target = 4.0 / (freq * freq);
    if (std::abs(abc.a * abc.b - abc.c * abc.c - target) > 1e-9 * std::max(1.0, target)) {
        throw std::invalid_argument("ep_sigma: not an Ermakov-Pinney solution (AB - C^2 != 4/Phi^2)");
    }
}

}  // namespace

double ep_sigma(const EPConstantsABC& abc, double freq, double t) {
    check_ep_constraint(abc, freq);
    const double q = sigma_radicand(abc, freq, t);
    if (q <= 0.0) {
        throw std::domain_error("ep_sigma: radicand not positive");
    }
    return std::sqrt(q);
}

double ep_sigma_residual(const EPConstantsABC& abc, double freq, double t) {
    check_ep_constraint(abc, freq);
    // q = alpha + beta cos(freq t) + delta sin(freq t)
    const double alpha = (abc.a + abc.b) / 2.0;
    const double beta = (abc.b - abc.a) / 2.0;
    const double delta = abc.branch * abc.c;
    const double q = alpha + beta * std::cos(freq * t) + delta * std::sin(freq * t);
    if (q <= 0.0) {
        throw std::domain_error("ep_sigma_residual: radicand not positive");
    }
    const double qd = freq * (-beta * std::sin(freq * t) + delta * std::cos(freq * t));
    const double qdd = -freq * freq * (q - alpha);
    const double sig = std::sqrt(q);
    const double sigdd = qdd / (2.0 * sig) - qd * qd / (4.0 * q * sig);
    return std::abs(sigdd + freq * freq / 4.0 * sig - 1.0 / (sig * sig * sig));
}

std::vector<double> ep_numeric_solve(double chi0, double chidot0, double freq,
                                     double lambda, const std::vector<double>& grid) {
    if (grid.size() < 2) {
        throw std::invalid_argument("ep_numeric_solve: grid needs at least two points");
    }
    if (chi0 <= 0.0) {
        throw std::invalid_argument("ep_numeric_solve: chi0 must be positive");
    }
    const auto accel = [freq, lambda](double x, double v) {
        return 1.5 * v * v / x + 0.5 * freq * freq * x - lambda * x * x * x;
    };

    std::vector<double> out;
    out.reserve(grid.size());
    double x = chi0;
    double v = chidot0;
    out.push_back(x);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double dt = grid[i] - grid[i - 1];
        if (dt <= 0.0) {
            throw std::invalid_argument("ep_numeric_solve: grid must be strictly increasing");
        }
        const double k1x = v, k1v = accel(x, v);
        const double k2x = v + 0.5 * dt * k1v, k2v = accel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v);
        const double k3x = v + 0.5 * dt * k2v, k3v = accel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v);
        const double k4x = v + dt * k3v, k4v = accel(x + dt * k3x, v + dt * k3v);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw std::runtime_error("ep_numeric_solve: singular trajectory (chi crossed zero)");
        }
        out.push_back(x);
    }
    return out;
}

}  // namespace spinmetric
