#include "spinmetric/dyson_metric.hpp"

#include <cmath>
#include <stdexcept>

namespace spinmetric {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix eta_half(double g, double c1, double x, double xd) {
    const double sx = std::sqrt(x);
    const double e1 = c1 * (g + 1.0) / (sx * (g - 1.0));
    const double e2 = c1 * xd / ((1.0 - g) * x * sx);
    const double e3 = c1 * sx / (g - 1.0);
    const double e4 = c1 / sx;
    Matrix eta(2, 2);
    eta << e1, e2 - kI * e3, e2 + kI * e3, e4;
    return eta;
}

Matrix eta_one(double g, double c1, double x, double xd) {
    const double p = 1.0 + g;
    const double phi2 = (1.0 - g * g) / 2.0;  // squared model frequency
    const double x2 = x * x;
    const double e1 = c1 / x;
    const double e2 = -2.0 * c1 * xd / (p * x2);
    const double e3 = c1 / p;
    const double e4 = c1 * (4.0 * xd * xd - x2 * x2) / (2.0 * p * p * x2 * x);
    const double e5 = -2.0 * c1 * xd / (p * p * x);
    const double e6 =
        c1 * (4.0 * xd * xd + x2 * x2 - 4.0 * phi2 * x2) / (2.0 * p * p * x2 * x);
    const double e7 = 2.0 * (1.0 - g) * c1 * xd / (p * p * x2);
    const double e8 = c1 * (g - 1.0) / (p * p);
    const double e9 = c1 * (1.0 - g) * (1.0 - g) / (p * p * x);
    Matrix eta(3, 3);
    eta << e1, e2 - kI * e3, e4 - kI * e5,
           e2 + kI * e3, e6, e7 - kI * e8,
           e4 + kI * e5, e7 + kI * e8, e9;
    return eta;
}

Matrix eta_three_half(double g, double c1, double x, double xd) {
    const double s3 = std::sqrt(3.0);
    const double p = 1.0 + g;
    const double q = g * g - 1.0;  // = -36 phihat^2
    const double p2 = p * p, p3 = p * p * p;
    const double sx = std::sqrt(x);
    const double x2 = x * x, x4 = x2 * x2;
    const double xp12 = sx;            // x^(1/2)
    const double xp32 = x * sx;        // x^(3/2)
    const double xp52 = x2 * sx;       // x^(5/2)
    const double xp72 = x2 * x * sx;   // x^(7/2)
    const double xp92 = x4 * sx;       // x^(9/2)
    const double xd2 = xd * xd;

    const double e1 = c1 / xp32;
    const double e2 = -6.0 * s3 * c1 * xd / (p * xp52);
    const double e3 = 3.0 * s3 * c1 / (p * xp12);
    const double e4 = -9.0 * s3 * c1 * (x4 - 4.0 * xd2) / (p2 * xp72);
    const double e5 = -36.0 * s3 * c1 * xd / (p2 * xp32);
    const double e6 = 54.0 * c1 * xd * (3.0 * x4 - 4.0 * xd2) / (p3 * xp92);
    const double e7 = -27.0 * c1 * (x4 - 12.0 * xd2) / (p3 * xp52);
    const double e8 = c1 * (18.0 * x4 + q * x2 + 72.0 * xd2) / (p2 * xp72);
    const double e9 = -6.0 * c1 * xd * (9.0 * x4 + 2.0 * q * x2 + 36.0 * xd2) / (p3 * xp92);
    const double e10 = 3.0 * c1 * (9.0 * x4 + 2.0 * q * x2 + 36.0 * xd2) / (p3 * xp52);
    const double e11 = -9.0 * s3 * c1 * (g - 1.0) * (x4 - 4.0 * xd2) / (p3 * xp72);
    const double e12 = -36.0 * s3 * c1 * (g - 1.0) * xd / (p3 * xp32);
    const double e13 = c1 * (g - 1.0) * (18.0 * x4 + q * x2 + 72.0 * xd2) / (p3 * xp72);
    const double e14 = -6.0 * s3 * c1 * xd * (g - 1.0) * (g - 1.0) / (p3 * xp52);
    const double e15 = 3.0 * s3 * c1 * (g - 1.0) * (g - 1.0) / (p3 * xp12);
    const double e16 = c1 * (g - 1.0) * (g - 1.0) * (g - 1.0) / (p3 * xp32);

    Matrix eta(4, 4);
    eta << e1, e2 - kI * e3, e4 - kI * e5, e6 - kI * e7,
           e2 + kI * e3, e8, e9 - kI * e10, e11 - kI * e12,
           e4 + kI * e5, e9 + kI * e10, e13, e14 - kI * e15,
           e6 + kI * e7, e11 + kI * e12, e14 + kI * e15, e16;
    return eta;
}

}  // namespace

DysonSpec make_dyson_spec(const ModelParams& params, double c1, double c2, double c3,
                          int branch) {
    params.validate();
    if (c1 == 0.0) {
        throw std::invalid_argument("make_dyson_spec: c1 must be nonzero");
    }
    if (std::abs(params.gamma) >= 1.0) {
        throw std::invalid_argument("make_dyson_spec: requires |gamma| < 1");
    }
    DysonSpec spec;
    spec.params = params;
    spec.c1 = c1;
    spec.ep = ep_solution(params.spin, params.gamma, c2, c3, branch);
    return spec;
}

Matrix dyson_map(const DysonSpec& spec, double t) {
    if (spec.ep.branch != +1) {
        throw std::domain_error("dyson_map: negative chi branch, Dyson map undefined");
    }
    const double tau = t / spec.params.hbar;
    const double x = spec.ep.value(tau);
    const double xd = spec.ep.deriv(tau);
    switch (spec.params.spin) {
        case Spin::half: return eta_half(spec.params.gamma, spec.c1, x, xd);
        case Spin::one: return eta_one(spec.params.gamma, spec.c1, x, xd);
        case Spin::three_half: return eta_three_half(spec.params.gamma, spec.c1, x, xd);
    }
    throw std::invalid_argument("dyson_map: unsupported spin");
}

Matrix metric(const DysonSpec& spec, double t) {
    const Matrix eta = dyson_map(spec, t);
    return eta * eta;
}

Matrix hermitian_counterpart(const DysonSpec& spec, double t, double fd_step) {
    const Matrix eta = dyson_map(spec, t);
    const Matrix etad =
        time_derivative([&spec](double s) { return dyson_map(spec, s); }, t, fd_step);
    const Matrix inv = eta.inverse();
    return eta * hamiltonian(spec.params) * inv + kI * spec.params.hbar * etad * inv;
}

Matrix hermitian_target(const DysonSpec& spec, double t) {
    const double tau = t / spec.params.hbar;
    const double chi = spec.ep.value(tau);
    const auto ops = spin_operators(spec.params.spin);
    const int d = dimension(spec.params.spin);
    const Matrix id = Matrix::Identity(d, d);
    switch (spec.params.spin) {
        case Spin::half:
            return -0.5 * (spec.params.omega * id + chi * 2.0 * ops.sz);
        case Spin::one:
            return -0.5 * (spec.params.omega * id + chi * ops.sz);
        case Spin::three_half:
            return -0.5 * (spec.params.omega / 2.0 * id + chi * ops.sz);
    }
    throw std::invalid_argument("hermitian_target: unsupported spin");
}

double quasi_hermiticity_residual(const Matrix& H, const std::function<Matrix(double)>& rho,
                                  double t, double fd_step, double hbar) {
    const Matrix r = rho(t);
    const Matrix rdot = time_derivative(rho, t, fd_step);
    return max_abs((H.adjoint() * r - r * H - kI * hbar * rdot).eval());
}

Matrix metric_closed_form(const MetricConstants& constants, const ModelParams& params,
                          double t) {
    params.validate();
    if (std::abs(params.gamma) >= 1.0) {
        throw std::invalid_argument("metric_closed_form: requires |gamma| < 1");
    }
    const double g = params.gamma;
    const double tau = t / params.hbar;
    const double phi = params.frequency();
    const auto gam = [&](double x, double y, double mult) {
        return x * std::sin(mult * phi * tau) + y * std::cos(mult * phi * tau);
    };

    if (params.spin == Spin::half) {
        if (constants.b.size() != 4) {
            throw std::invalid_argument("metric_closed_form: s=1/2 takes 4 constants");
        }
        const double b1 = constants.b[0], b2 = constants.b[1], b3 = constants.b[2],
                     b4 = constants.b[3];
        const double r1 = (1.0 + g) / phi * gam(b2, -b1, 1.0) + b4;
        const double r2 = gam(b1, b2, 1.0);
        const double r3 = b3;
        const double r4 = (1.0 - g) / phi * gam(-b2, b1, 1.0) + (1.0 - g) / (1.0 + g) * b4;
        Matrix rho(2, 2);
        rho << r1, r2 - kI * r3, r2 + kI * r3, r4;
        return rho;
    }
    if (params.spin == Spin::one) {
        if (constants.b.size() != 9) {
            throw std::invalid_argument("metric_closed_form: s=1 takes 9 constants");
        }
        const auto& b = constants.b;
        const double b1 = b[0], b2 = b[1], b3 = b[2], b4 = b[3], b5 = b[4], b6 = b[5],
                     b7 = b[6], b8 = b[7], b9 = b[8];
        const double ratio = (1.0 - g) / (1.0 + g);
        const double r1 =
            (2.0 * b4 + 3.0 * b5) * (g + 1.0) / (8.0 * (1.0 - g)) + gam(b6, b7, 1.0) +
            gam(b8, b9, 2.0);
        const double r2 = phi / (1.0 + g) * (gam(-b7, b6, 1.0) + 2.0 * gam(-b9, b8, 2.0));
        const double r3 = (1.0 + g) / (2.0 * phi) * gam(b2, -b1, 1.0) + b3;
        const double r4 = (g - 1.0) / (g + 1.0) * gam(b8, b9, 2.0) + (6.0 * b4 + b5) / 8.0;
        const double r5 = gam(b1, b2, 1.0);
        const double r6 =
            2.0 * (g - 1.0) / (g + 1.0) * gam(b8, b9, 2.0) - (2.0 * b4 - b5) / 4.0;
        const double r7 = std::pow(ratio, 1.5) / std::sqrt(2.0) *
                          (gam(-b7, b6, 1.0) + 2.0 * gam(b9, -b8, 2.0));
        const double r8 = phi / (1.0 + g) * gam(-b2, b1, 1.0) + ratio * b3;
        const double r9 = ratio * ratio * (-gam(b6, b7, 1.0) + gam(b8, b9, 2.0)) +
                          (1.0 - g) * (2.0 * b4 + 3.0 * b5) / (8.0 * (1.0 + g));
        Matrix rho(3, 3);
        rho << r1, r2 - kI * r3, r4 - kI * r5,
               r2 + kI * r3, r6, r7 - kI * r8,
               r4 + kI * r5, r7 + kI * r8, r9;
        return rho;
    }
    throw std::invalid_argument("metric_closed_form: unsupported for s=3/2");
}

MetricConstants match_constants(const DysonSpec& spec) {
    const double g = spec.params.gamma;
    const double c1 = spec.c1;
    const double c2 = spec.ep.c2;
    const double c3 = spec.ep.c3;
    const double r = spec.ep.root();
    const double phi = spec.params.frequency();
    const double c1sq = c1 * c1;

    MetricConstants mc;
    if (spec.params.spin == Spin::half) {
        const double om = (1.0 - g) * (1.0 - g);
        mc.b = {
            -2.0 * c3 * g * c1sq / om,
            2.0 * c2 * g * c1sq / om,
            2.0 * g * c1sq / om,
            2.0 * phi * c1sq * r / (om * (1.0 - g)),
        };
        return mc;
    }
    if (spec.params.spin == Spin::one) {
        const double p2 = (1.0 + g) * (1.0 + g);
        const double p3 = p2 * (1.0 + g);
        const double p4 = p2 * p2;
        const double phi2 = phi * phi;
        mc.b = {
            -4.0 * g * g * c1sq * c3 / p4,
            4.0 * g * g * c1sq * c2 / p4,
            2.0 * g * c1sq * r / (phi * p3),
            2.0 * c1sq * (phi2 * (3.0 - c2 * c2 - c3 * c3) - 2.0) / p4,
            2.0 * c1sq * (3.0 + g * g) * r * r / p4,
            2.0 * g * c1sq * c2 * r / (phi2 * p2),
            2.0 * g * c1sq * c3 * r / (phi2 * p2),
            g * g * c1sq * c2 * c3 / (phi2 * p2),
            g * g * c1sq * (c3 * c3 - c2 * c2) / (2.0 * phi2 * p2),
        };
        return mc;
    }
    throw std::invalid_argument("match_constants: unsupported for s=3/2");
}

double metric_determinant_closed_form(const DysonSpec& spec) {
    const double g = spec.params.gamma;
    const double c1 = spec.c1;
    const double r2 = spec.ep.root() * spec.ep.root();  // 1 + c2^2 + c3^2
    switch (spec.params.spin) {
        case Spin::half:
            return 4.0 * (1.0 + g) * std::pow(c1, 4) * r2 / std::pow(1.0 - g, 3);
        case Spin::one:
            return 8.0 * std::pow(1.0 - g, 3) * std::pow(c1, 6) * std::pow(r2, 3) /
                   std::pow(1.0 + g, 9);
        case Spin::three_half:
            return std::pow(6.0, 12) * std::pow(1.0 - g, 6) * std::pow(c1, 8) *
                   std::pow(r2, 6) / std::pow(1.0 + g, 18);
    }
    throw std::invalid_argument("metric_determinant_closed_form: unsupported spin");
}

Matrix energy_operator(const DysonSpec& spec, double t, double fd_step) {
    const Matrix eta = dyson_map(spec, t);
    const Matrix etad =
        time_derivative([&spec](double s) { return dyson_map(spec, s); }, t, fd_step);
    return hamiltonian(spec.params) + kI * spec.params.hbar * eta.inverse() * etad;
}

}  // namespace spinmetric
