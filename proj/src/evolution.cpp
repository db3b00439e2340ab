#include "spinmetric/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace spinmetric {

namespace {
constexpr Complex kI{0.0, 1.0};

const Level& find_level(const Spectrum& spec, int k) {
    for (const auto& lv : spec.levels) {
        if (lv.k == k) return lv;
    }
    throw std::invalid_argument("unknown level label k=" + std::to_string(k));
}
}  // namespace

Vector closed_form_state(const ModelParams& params, const std::vector<Complex>& coeffs,
                         double t) {
    const Spectrum spec = closed_form_spectrum(params);
    if (coeffs.size() != spec.levels.size()) {
        throw std::invalid_argument("closed_form_state: coefficient count mismatch");
    }
    Vector out = Vector::Zero(dimension(params.spin));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto& lv = spec.levels[i];
        out += coeffs[i] * lv.state * std::exp(-kI * lv.energy * t / params.hbar);
    }
    return out;
}

Vector map_state(const DysonSpec& spec, const Vector& psi, double t) {
    if (psi.size() != dimension(spec.params.spin)) {
        throw std::invalid_argument("map_state: dimension mismatch");
    }
    return dyson_map(spec, t) * psi;
}

double normalization_constant(const DysonSpec& spec, int k) {
    const double g = spec.params.gamma;
    switch (spec.params.spin) {
        case Spin::half: {
            if (k != 1 && k != -1) throw std::invalid_argument("normalization_constant: k must be +-1");
            const double phi = spec.params.frequency();
            const double r = spec.ep.root();
            const double c1sq = spec.c1 * spec.c1;
            // N_pm = (1-g) / (mp 4 c1^2 phi (g mp r)), positive for |g|<1
            return (1.0 - g) / (4.0 * c1sq * phi * (r - double(k) * g));
        }
        case Spin::one: {
            const Spectrum sp = closed_form_spectrum(spec.params);
            const auto& lv = find_level(sp, k);
            const Matrix rho0 = metric(spec, 0.0);
            const Complex n = lv.state.dot(rho0 * lv.state);
            return 1.0 / n.real();
        }
        case Spin::three_half:
            throw std::invalid_argument(
                "normalization_constant: unsupported for s=3/2 (no closed-form N)");
    }
    throw std::invalid_argument("normalization_constant: unsupported spin");
}

Vector map_eigenstate(const DysonSpec& spec, int k, double t, bool normalized) {
    const Spectrum sp = closed_form_spectrum(spec.params);
    const auto& lv = find_level(sp, k);
    const Vector psi = lv.state * std::exp(-kI * lv.energy * t / spec.params.hbar);
    Vector phi = dyson_map(spec, t) * psi;
    if (normalized) phi *= std::sqrt(normalization_constant(spec, k));
    return phi;
}

Complex eigenstate_overlap(const DysonSpec& spec) {
    if (spec.params.spin != Spin::half) {
        throw std::invalid_argument("eigenstate_overlap: closed form exists for s=1/2 only");
    }
    const double g = spec.params.gamma;
    const double phi = spec.params.frequency();
    const double c2 = spec.ep.c2, c3 = spec.ep.c3;
    return g * Complex(-c3, c2) / std::sqrt(phi * phi + c2 * c2 + c3 * c3);
}

StateTrajectory rk4_propagate(const std::function<Matrix(double)>& generator,
                              const Vector& psi0, double t0, double dt, int steps,
                              double hbar) {
    if (dt <= 0.0 || steps < 0) {
        throw std::invalid_argument("rk4_propagate: dt must be positive, steps >= 0");
    }
    StateTrajectory traj;
    traj.times.reserve(static_cast<std::size_t>(steps) + 1);
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);
    const auto rhs = [&](double t, const Vector& y) -> Vector {
        return -kI / hbar * (generator(t) * y);
    };
    Vector y = psi0;
    double t = t0;
    traj.times.push_back(t);
    traj.states.push_back(y);
    for (int i = 0; i < steps; ++i) {
        const Vector k1 = rhs(t, y);
        const Vector k2 = rhs(t + dt / 2.0, y + dt / 2.0 * k1);
        const Vector k3 = rhs(t + dt / 2.0, y + dt / 2.0 * k2);
        const Vector k4 = rhs(t + dt, y + dt * k3);
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t0 + (i + 1) * dt;
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    return traj;
}

Complex metric_inner_product(const Vector& a, const Vector& b, const Matrix& rho) {
    if (a.size() != b.size() || rho.rows() != a.size() || rho.cols() != a.size()) {
        throw std::invalid_argument("metric_inner_product: dimension mismatch");
    }
    return a.dot(rho * b);
}

Vector phase_align(const Vector& v, const Vector& ref) {
    const Complex o = ref.dot(v);
    if (std::abs(o) < 1e-300) return v;
    return v * (std::conj(o) / std::abs(o));
}

EnergyCheck energy_expectation_check(const DysonSpec& spec, int k, double t,
                                     double fd_step) {
    EnergyCheck out;
    const Spectrum sp = closed_form_spectrum(spec.params);
    const auto& lv = find_level(sp, k);
    const Vector psi = lv.state * std::exp(-kI * lv.energy * t / spec.params.hbar);
    const bool normalized = spec.params.spin != Spin::three_half;
    const double n = normalized ? normalization_constant(spec, k) : 1.0;

    const Matrix h = hermitian_target(spec, t);
    const Vector phi = std::sqrt(n) * (dyson_map(spec, t) * psi);
    out.lhs = phi.dot(h * phi).real();

    const Matrix rho = metric(spec, t);
    const Matrix htilde = energy_operator(spec, t, fd_step);
    out.rhs = (n * psi.dot(rho * (htilde * psi))).real();

    if (spec.params.spin == Spin::half) {
        const double g = spec.params.gamma;
        const double phi_f = spec.params.frequency();
        const double c2 = spec.ep.c2, c3 = spec.ep.c3;
        const double lam = phi_f * phi_f + c2 * c2 + c3 * c3;
        const double chi = spec.ep.value(t / spec.params.hbar);
        out.closed = (double(k) * phi_f * phi_f * spec.ep.root() - g * (c2 * c2 + c3 * c3)) /
                         (2.0 * lam) * chi -
                     spec.params.omega / 2.0;
    }
    return out;
}

}  // namespace spinmetric
