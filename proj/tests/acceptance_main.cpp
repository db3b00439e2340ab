// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are fixed here, not configurable.

#include "spinmetric/verification.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace spinmetric;

namespace {

constexpr Complex I{0.0, 1.0};

struct Outcome {
    double residual = 0.0;
    double tol = 0.0;
    std::string notes;
};

struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return out;
}

DysonSpec random_spec(Spin s, std::mt19937& rng) {
    std::uniform_real_distribution<double> ug(-0.85, 0.85);
    std::uniform_real_distribution<double> uw(-2.0, 2.0);
    std::uniform_real_distribution<double> uc1(0.4, 1.6);
    std::uniform_real_distribution<double> uc(-2.0, 2.0);
    ModelParams p;
    p.spin = s;
    p.gamma = ug(rng);
    p.omega = uw(rng);
    return make_dyson_spec(p, uc1(rng), uc(rng), uc(rng));
}

const Spin kAllSpins[] = {Spin::half, Spin::one, Spin::three_half};

// 1. spectrum reality and the broken-regime structure
Outcome criterion_spectrum() {
    Outcome out;
    out.tol = 1e-10;
    for (Spin s : kAllSpins) {
        ModelParams p;
        p.spin = s;
        p.omega = 1.0;
        for (double g : {-0.95, -0.5, 0.0, 0.5, 0.95}) {
            p.gamma = g;
            const auto sys = eigenpairs(hamiltonian(p));
            std::vector<double> closed;
            for (const auto& lv : closed_form_spectrum(p).levels) {
                closed.push_back(lv.energy.real());
            }
            std::sort(closed.begin(), closed.end());
            for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
                out.residual = std::max(
                    out.residual,
                    std::abs(sys.values(i) - closed[static_cast<std::size_t>(i)]));
            }
        }
        p.gamma = 1.5;
        const auto sys = eigenpairs(hamiltonian(p));
        double max_im = 0.0;
        for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
            max_im = std::max(max_im, std::abs(sys.values(i).imag()));
            double best = 1e300;
            for (Eigen::Index j = 0; j < sys.values.size(); ++j) {
                best = std::min(best, std::abs(std::conj(sys.values(i)) - sys.values(j)));
            }
            out.residual = std::max(out.residual, best);
        }
        if (max_im <= 1e-3) out.residual = std::max(out.residual, 1.0);
    }
    return out;
}

// 2. Ermakov-Pinney reduction
Outcome criterion_ep() {
    Outcome out;
    out.tol = 1e-9;
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> uc(-2.0, 2.0);
    std::uniform_real_distribution<double> ug(-0.9, 0.9);
    const auto grid = linspace(0.0, 20.0, 401);
    for (Spin s : kAllSpins) {
        for (int draw = 0; draw < 20; ++draw) {
            const auto sol = ep_solution(s, ug(rng), uc(rng), uc(rng), +1);
            const auto abc = ep_constants(sol);
            for (double t : grid) {
                out.residual = std::max(out.residual, constraint_residual(sol, t));
                out.residual = std::max(out.residual, ep_sigma_residual(abc, sol.freq, t));
            }
        }
    }
    return out;
}

// 3. Dyson relation and the target form of h(t)
Outcome criterion_dyson() {
    Outcome out;
    out.tol = 1e-6;
    out.notes = "target forms: -1/2(w I + chi sigma_z), -1/2(w I + X S_z), -1/2(w/2 I + Xi S_z)";
    std::mt19937 rng(202);
    const auto grid = linspace(0.0, 10.0, 51);
    for (Spin s : kAllSpins) {
        for (int pt = 0; pt < 10; ++pt) {
            const DysonSpec spec = random_spec(s, rng);
            for (double t : grid) {
                const Matrix h = hermitian_counterpart(spec, t, 1e-5);
                out.residual =
                    std::max(out.residual, max_abs((h - hermitian_target(spec, t)).eval()));
                out.residual = std::max(out.residual, hermiticity_residual(h));
            }
        }
    }
    return out;
}

// 4. quasi-Hermiticity for rho = eta^2 and for the direct-route closed forms
Outcome criterion_quasi_hermiticity() {
    Outcome out;
    out.tol = 1e-6;
    std::mt19937 rng(303);
    std::uniform_real_distribution<double> ub(-2.0, 2.0);
    const auto grid = linspace(0.0, 10.0, 21);
    for (Spin s : kAllSpins) {
        for (int pt = 0; pt < 10; ++pt) {
            const DysonSpec spec = random_spec(s, rng);
            const Matrix h = hamiltonian(spec.params);
            const auto rho = [&](double t) { return metric(spec, t); };
            for (double t : grid) {
                out.residual =
                    std::max(out.residual, quasi_hermiticity_residual(h, rho, t, 1e-5));
            }
            if (s != Spin::three_half) {
                MetricConstants mc;
                mc.b.resize(s == Spin::half ? 4 : 9);
                for (auto& v : mc.b) v = ub(rng);
                const auto direct = [&](double t) {
                    return metric_closed_form(mc, spec.params, t);
                };
                for (double t : grid) {
                    out.residual = std::max(
                        out.residual, quasi_hermiticity_residual(h, direct, t, 1e-5));
                }
            }
        }
    }
    return out;
}

// 5. route equivalence via the matching constants
Outcome criterion_route_equivalence() {
    Outcome out;
    out.tol = 1e-10;
    std::mt19937 rng(404);
    const auto grid = linspace(0.0, 10.0, 51);
    for (Spin s : {Spin::half, Spin::one}) {
        for (int pt = 0; pt < 10; ++pt) {
            const DysonSpec spec = random_spec(s, rng);
            const MetricConstants mc = match_constants(spec);
            for (double t : grid) {
                out.residual = std::max(
                    out.residual,
                    max_abs((metric(spec, t) - metric_closed_form(mc, spec.params, t)).eval()));
            }
        }
    }
    return out;
}

// 6. determinant closed forms, time-independent
Outcome criterion_determinant() {
    Outcome out;
    out.tol = 1e-10;
    out.notes = "s=3/2 uses the corrected prefactor 6^12";
    std::mt19937 rng(505);
    const auto grid = linspace(0.0, 10.0, 41);
    for (Spin s : kAllSpins) {
        for (int pt = 0; pt < 10; ++pt) {
            const DysonSpec spec = random_spec(s, rng);
            const double closed = metric_determinant_closed_form(spec);
            double lo = 1e300, hi = -1e300;
            for (double t : grid) {
                const double det = metric(spec, t).determinant().real();
                lo = std::min(lo, det);
                hi = std::max(hi, det);
                out.residual =
                    std::max(out.residual, std::abs(det - closed) / std::abs(closed));
            }
            out.residual = std::max(out.residual, (hi - lo) / std::abs(closed));
        }
    }
    return out;
}

// 7. unitarity and overlap identities
Outcome criterion_unitarity() {
    Outcome out;
    out.tol = 1e-9;
    out.notes = "overlap formula in the <phi_-|phi_+> convention; conjugate for +-";
    std::mt19937 rng(606);
    const auto grid = linspace(0.0, 10.0, 21);
    double fd_part = 0.0;
    for (int pt = 0; pt < 6; ++pt) {
        const DysonSpec spec = random_spec(Spin::half, rng);
        const Complex formula = eigenstate_overlap(spec);
        for (double t : grid) {
            const Matrix rho = metric(spec, t);
            for (int k : {+1, -1}) {
                const auto& lv = closed_form_spectrum(spec.params).levels[k == 1 ? 0 : 1];
                const double n = normalization_constant(spec, k);
                const Vector psi = lv.state * std::exp(-I * lv.energy * t);
                out.residual = std::max(
                    out.residual, std::abs(n * metric_inner_product(psi, psi, rho) - 1.0));
            }
            const Vector php = map_eigenstate(spec, +1, t, true);
            const Vector phm = map_eigenstate(spec, -1, t, true);
            out.residual = std::max(out.residual, std::abs(phm.dot(php) - formula));
            out.residual =
                std::max(out.residual, std::abs(php.dot(phm) - std::conj(formula)));
        }
    }
    // d/dt <Psi|rho Psi> = 0 for superpositions, all spins (finite differences)
    for (Spin s : kAllSpins) {
        const DysonSpec spec = random_spec(s, rng);
        std::vector<Complex> coeffs(static_cast<std::size_t>(dimension(s)));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& c : coeffs) c = Complex(u(rng), u(rng));
        const auto norm_at = [&](double t) {
            const Vector psi = closed_form_state(spec.params, coeffs, t);
            return metric_inner_product(psi, psi, metric(spec, t)).real();
        };
        for (double t : grid) {
            const double fd = 1e-5;
            fd_part = std::max(fd_part,
                               std::abs(norm_at(t + fd) - norm_at(t - fd)) / (2.0 * fd));
        }
    }
    if (fd_part > 1e-6) {
        out.residual = std::max(out.residual, fd_part);
        out.notes += "; norm drift exceeded 1e-6";
    }
    return out;
}

// 8. energy expectation identities
Outcome criterion_energy() {
    Outcome out;
    out.tol = 1e-6;
    out.notes = "closed form with the corrected gamma(c2^2+c3^2) term";
    std::mt19937 rng(707);
    for (int pt = 0; pt < 10; ++pt) {
        const DysonSpec spec = random_spec(Spin::half, rng);
        for (double t : linspace(0.0, 10.0, 11)) {
            for (int k : {+1, -1}) {
                const auto ec = energy_expectation_check(spec, k, t, 1e-5);
                out.residual = std::max(out.residual, std::abs(ec.lhs - ec.rhs));
                out.residual = std::max(out.residual, std::abs(ec.lhs - *ec.closed));
                out.residual = std::max(out.residual, std::abs(ec.rhs - *ec.closed));
            }
        }
    }
    for (Spin s : {Spin::one, Spin::three_half}) {
        for (int pt = 0; pt < 5; ++pt) {
            const DysonSpec spec = random_spec(s, rng);
            for (const auto& lv : closed_form_spectrum(spec.params).levels) {
                for (double t : linspace(0.0, 10.0, 6)) {
                    const auto ec = energy_expectation_check(spec, lv.k, t, 1e-5);
                    out.residual = std::max(out.residual, std::abs(ec.lhs - ec.rhs));
                }
            }
        }
    }
    return out;
}

// 9. propagation consistency between the two representations
Outcome criterion_propagation() {
    Outcome out;
    out.tol = 1e-6;
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Spin s : kAllSpins) {
        ModelParams p;
        p.spin = s;
        p.gamma = 0.5;
        p.omega = 1.1;
        const DysonSpec spec = make_dyson_spec(p, 1.0, 0.9, -0.7);
        Vector psi0(dimension(s));
        for (int i = 0; i < psi0.size(); ++i) psi0(i) = Complex(u(rng), u(rng));
        psi0.normalize();
        const Matrix h0 = hamiltonian(p);
        const auto traj_psi =
            rk4_propagate([&](double) { return h0; }, psi0, 0.0, 1e-3, 10000);
        const auto traj_phi =
            rk4_propagate([&](double t) { return hermitian_target(spec, t); },
                          map_state(spec, psi0, 0.0), 0.0, 1e-3, 10000);
        const Vector want = map_state(spec, traj_psi.states.back(), 10.0);
        const Vector got = phase_align(traj_phi.states.back(), want);
        out.residual = std::max(out.residual, max_abs((got - want).eval()));
    }
    return out;
}

// 10. the full verify battery passes for every spin and stays under 30 s
Outcome criterion_full_verify() {
    Outcome out;
    out.tol = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (Spin s : kAllSpins) {
        RunConfig cfg;
        cfg.spin = s;
        cfg.gamma = 0.6;
        cfg.omega = 1.0;
        cfg.c1 = 1.0;
        cfg.c2 = 1.0;
        cfg.c3 = 0.0;
        const auto report = run_verification(cfg);
        if (!report.summary) {
            out.residual = 1.0;
            for (const auto& c : report.checks) {
                if (!c.pass) out.notes += c.name + " failed; ";
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.notes += "all-spin verify took " + format_number(secs) + " s";
    if (secs >= 30.0) out.residual = std::max(out.residual, secs);
    return out;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "spectrum reality and broken-regime pairs", criterion_spectrum},
        {2, "Ermakov-Pinney reduction of chi/X/Xi and sigma", criterion_ep},
        {3, "Dyson relation and Hermitian target form", criterion_dyson},
        {4, "quasi-Hermiticity of both metric routes", criterion_quasi_hermiticity},
        {5, "route equivalence via matching constants", criterion_route_equivalence},
        {6, "determinant closed forms, time-independent", criterion_determinant},
        {7, "unitarity and overlap identities", criterion_unitarity},
        {8, "energy expectation identities", criterion_energy},
        {9, "propagation consistency across representations", criterion_propagation},
        {10, "full verify battery under 30 s", criterion_full_verify},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.residual = std::numeric_limits<double>::infinity();
            out.notes = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = out.residual <= out.tol;
        failures += pass ? 0 : 1;
        std::printf("[%s] criterion %2d: %s (max residual %.3e, tol %.3e, %.2f s)%s%s\n",
                    pass ? "PASS" : "FAIL", c.id, c.title.c_str(), out.residual, out.tol,
                    secs, out.notes.empty() ? "" : " -- ", out.notes.c_str());
    }
    if (failures != 0) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
