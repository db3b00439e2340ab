#include "spinmetric/spin_models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinmetric {

namespace {
constexpr Complex kI{0.0, 1.0};
}

int dimension(Spin s) {
    switch (s) {
        case Spin::half: return 2;
        case Spin::one: return 3;
        case Spin::three_half: return 4;
    }
    throw std::invalid_argument("dimension: unsupported spin");
}

Spin parse_spin(std::string_view s) {
    if (s == "1/2" || s == "0.5") return Spin::half;
    if (s == "1") return Spin::one;
    if (s == "3/2" || s == "1.5") return Spin::three_half;
    throw std::invalid_argument("unsupported spin label: " + std::string(s));
}

std::string to_string(Spin s) {
    switch (s) {
        case Spin::half: return "1/2";
        case Spin::one: return "1";
        case Spin::three_half: return "3/2";
    }
    return "?";
}

void ModelParams::validate() const {
    if (hbar <= 0.0) throw std::invalid_argument("ModelParams: hbar must be positive");
}

double ModelParams::frequency() const {
    if (broken_regime()) {
        throw std::domain_error("frequency: real only for |gamma| <= 1");
    }
    const double root = std::sqrt(1.0 - gamma * gamma);
    switch (spin) {
        case Spin::half: return root;
        case Spin::one: return root / std::sqrt(2.0);
        case Spin::three_half: return root / 6.0;
    }
    throw std::invalid_argument("frequency: unsupported spin");
}

Complex ModelParams::frequency_c() const {
    const Complex root = std::sqrt(Complex(1.0 - gamma * gamma, 0.0));
    switch (spin) {
        case Spin::half: return root;
        case Spin::one: return root / std::sqrt(2.0);
        case Spin::three_half: return root / 6.0;
    }
    throw std::invalid_argument("frequency_c: unsupported spin");
}

bool ModelParams::broken_regime() const { return std::abs(gamma) > 1.0; }

SpinOperators spin_operators(Spin s) {
    SpinOperators ops;
    const int d = dimension(s);
    const double sval = (d - 1) / 2.0;
    // ladder construction: (S+)_{m,m+1} = sqrt(s(s+1) - m_z(m_z+1))
    Matrix splus = Matrix::Zero(d, d);
    for (int i = 0; i + 1 < d; ++i) {
        const double mz = sval - (i + 1);
        splus(i, i + 1) = std::sqrt(sval * (sval + 1.0) - mz * (mz + 1.0));
    }
    const Matrix sminus = splus.adjoint();
    ops.sx = (splus + sminus) / 2.0;
    ops.sy = (splus - sminus) / (2.0 * kI);
    ops.sz = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) ops.sz(i, i) = sval - i;
    return ops;
}

Matrix hamiltonian(const ModelParams& p) {
    p.validate();
    const auto ops = spin_operators(p.spin);
    const double w = p.omega;
    const double g = p.gamma;
    const int d = dimension(p.spin);
    const Matrix id = Matrix::Identity(d, d);
    switch (p.spin) {
        case Spin::half:
            // -1/2 (sigma_y + w I + i g sigma_x), Pauli matrices = 2 S
            return -0.5 * (2.0 * ops.sy + w * id + kI * g * 2.0 * ops.sx);
        case Spin::one:
            return -1.0 / std::sqrt(2.0) * (ops.sy + w / std::sqrt(2.0) * id + kI * g * ops.sx);
        case Spin::three_half:
            return -1.0 / 6.0 * (ops.sy + kI * g * ops.sx) - w / 4.0 * id;
    }
    throw std::invalid_argument("hamiltonian: unsupported spin");
}

Spectrum closed_form_spectrum(const ModelParams& p) {
    p.validate();
    Spectrum spec;
    spec.broken = p.broken_regime();
    const double g = p.gamma;
    const double w = p.omega;
    const Complex phi = p.frequency_c();
    // principal-branch component roots; their product equals the frequency root
    const Complex rm = std::sqrt(Complex(1.0 - g, 0.0));
    const Complex rp = std::sqrt(Complex(1.0 + g, 0.0));

    switch (p.spin) {
        case Spin::half:
            for (int k : {+1, -1}) {
                Level lv;
                lv.k = k;
                lv.energy = -w / 2.0 + double(k) * phi / 2.0;
                lv.state = Vector(2);
                lv.state << double(k) * kI * (1.0 - g), phi;
                spec.levels.push_back(std::move(lv));
            }
            break;
        case Spin::one:
            for (int k : {+1, 0, -1}) {
                Level lv;
                lv.k = k;
                lv.energy = -w / 2.0 + double(k) * phi;
                lv.state = Vector(3);
                lv.state << double(k == 0 ? 1 : -1) * (1.0 - g), 2.0 * kI * double(k) * phi,
                    Complex(1.0 + g, 0.0);
                spec.levels.push_back(std::move(lv));
            }
            break;
        case Spin::three_half: {
            const double s3 = std::sqrt(3.0);
            for (int k : {+3, +1, -1, -3}) {
                Level lv;
                lv.k = k;
                lv.energy = -double(k) * phi / 2.0 - w / 4.0;
                const double ak = std::abs(k);
                const double sk = k > 0 ? 1.0 : -1.0;
                lv.state = Vector(4);
                lv.state << kI * rm * rm * rm, -2.0 * s3 * double(k) * phi * rm,
                    2.0 * kI * s3 * (2.0 * ak - double(k) * double(k)) * phi * rp,
                    sk * (ak - 2.0) * rp * rp * rp;
                spec.levels.push_back(std::move(lv));
            }
            break;
        }
    }
    return spec;
}

SpectrumReport verify_spectrum(const ModelParams& p, double tol) {
    SpectrumReport rep;
    rep.tol = tol;
    const Matrix h = hamiltonian(p);
    const double scale = h.norm();
    for (const auto& lv : closed_form_spectrum(p).levels) {
        // at the exceptional point |gamma|=1 the closed-form vectors degenerate
        const bool null_state = lv.state.norm() < 1e-12;
        const double r = null_state
                             ? std::numeric_limits<double>::infinity()
                             : (h * lv.state - lv.energy * lv.state).norm() / scale;
        rep.checks.push_back({lv.k, r});
        rep.max_residual = std::max(rep.max_residual, r);
        if (r > tol) rep.failing.push_back(lv.k);
    }
    rep.pass = rep.failing.empty();
    return rep;
}

}  // namespace spinmetric
