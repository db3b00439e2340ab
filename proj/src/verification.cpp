#include "spinmetric/verification.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace spinmetric {

namespace {

constexpr Complex kI{0.0, 1.0};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    return out;
}

}  // namespace

void RunConfig::validate() const {
    if (dt <= 0.0) throw ConfigError("dt must be positive");
    if (t_max <= 0.0) throw ConfigError("tmax must be positive");
    if (fd_step <= 0.0) throw ConfigError("fd-step must be positive");
    if (hbar <= 0.0) throw ConfigError("hbar must be positive");
    if (branch != +1 && branch != -1) throw ConfigError("branch must be +1 or -1");
    if (c1 == 0.0) throw ConfigError("c1 must be nonzero");
    if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
    for (const auto& [name, value] : tolerances) {
        if (value <= 0.0) throw ConfigError("tolerance '" + name + "' must be positive");
    }
}

double RunConfig::tol(const std::string& name, double fallback) const {
    const auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

ModelParams RunConfig::params() const {
    ModelParams p;
    p.spin = spin;
    p.gamma = gamma;
    p.omega = omega;
    p.hbar = hbar;
    return p;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

CheckRecord make_record(std::string name, std::string anchor, double residual, double tol,
                        std::string notes = {}) {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.anchor = std::move(anchor);
    rec.residual = residual;
    rec.tol = tol;
    rec.pass = residual <= tol;
    rec.notes = std::move(notes);
    return rec;
}

CheckRecord skipped_record(std::string name, std::string anchor, std::string why) {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.anchor = std::move(anchor);
    rec.residual = 0.0;
    rec.tol = 0.0;
    rec.pass = true;
    rec.notes = "skipped: " + std::move(why);
    return rec;
}

CheckRecord check_spin_algebra(const RunConfig& cfg) {
    double worst = 0.0;
    for (Spin s : {Spin::half, Spin::one, Spin::three_half}) {
        const auto ops = spin_operators(s);
        const int d = dimension(s);
        const double sval = (d - 1) / 2.0;
        worst = std::max(worst, max_abs((ops.sx * ops.sy - ops.sy * ops.sx - kI * ops.sz).eval()));
        worst = std::max(worst, max_abs((ops.sy * ops.sz - ops.sz * ops.sy - kI * ops.sx).eval()));
        worst = std::max(worst, max_abs((ops.sz * ops.sx - ops.sx * ops.sz - kI * ops.sy).eval()));
        const Matrix casimir = ops.sx * ops.sx + ops.sy * ops.sy + ops.sz * ops.sz;
        worst = std::max(worst,
                         max_abs((casimir - sval * (sval + 1.0) * Matrix::Identity(d, d)).eval()));
    }
    return make_record("spin-algebra", "[Sx,Sy]=iSz (cyclic); Sx^2+Sy^2+Sz^2=s(s+1)I",
                       worst, cfg.tol("algebra", 1e-12));
}

CheckRecord check_spectrum(const RunConfig& cfg) {
    const ModelParams p = cfg.params();
    const Matrix h = hamiltonian(p);
    const EigenSystem sys = eigenpairs(h);
    const Spectrum closed = closed_form_spectrum(p);
    const double tol = cfg.tol("spectrum", 1e-10);

    if (p.broken_regime()) {
        // conjugate-pair structure; reality is lost
        double pair_res = 0.0;
        double max_im = 0.0;
        for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
            const Complex lam = sys.values(i);
            max_im = std::max(max_im, std::abs(lam.imag()));
            double best = 1e300;
            for (Eigen::Index j = 0; j < sys.values.size(); ++j) {
                best = std::min(best, std::abs(std::conj(lam) - sys.values(j)));
            }
            pair_res = std::max(pair_res, best);
        }
        auto rec = make_record("spectrum", "complex-conjugate eigenvalue pairs for |gamma|>1",
                               pair_res, tol);
        rec.notes = "broken regime: max |Im E| = " + format_number(max_im);
        if (max_im <= 1e-3) {
            rec.pass = false;
            rec.notes += " (expected nonreal spectrum)";
        }
        return rec;
    }

    std::vector<Complex> ce;
    ce.reserve(closed.levels.size());
    for (const auto& lv : closed.levels) ce.push_back(lv.energy);
    std::sort(ce.begin(), ce.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    double diff = 0.0;
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        diff = std::max(diff, std::abs(ce[static_cast<std::size_t>(i)] - sys.values(i)));
    }
    double vec_res = 0.0;
    std::string notes;
    if (std::abs(std::abs(p.gamma) - 1.0) < 1e-12) {
        notes = "exceptional point: H defective, eigenvector check skipped";
    } else {
        vec_res = verify_spectrum(p, tol).max_residual;
    }
    if (sys.defective && notes.empty()) notes = "numerically defective eigenbasis";
    return make_record("spectrum", "closed-form E_k, Psi_k vs eigendecomposition",
                       std::max(diff, vec_res), tol, notes);
}

CheckRecord check_ep(const RunConfig& cfg, const DysonSpec& spec) {
    const auto grid = linspace(0.0, cfg.t_max, 401);
    const auto abc = ep_constants(spec.ep);
    double worst = 0.0;
    for (double t : grid) {
        worst = std::max(worst, constraint_residual(spec.ep, t));
        worst = std::max(worst, ep_sigma_residual(abc, spec.ep.freq, t));
    }
    return make_record(
        "ep-constraint",
        "chi''-(3/2)chi'^2/chi-(1/2)Phi^2 chi+lambda chi^3=0; sigma''+(Phi^2/4)sigma=1/sigma^3",
        worst, cfg.tol("ep", 1e-9));
}

CheckRecord check_dyson(const RunConfig& cfg, const DysonSpec& spec) {
    const auto grid = linspace(0.0, cfg.t_max, 101);
    double worst = 0.0;
    for (double t : grid) {
        const Matrix h = hermitian_counterpart(spec, t, cfg.fd_step);
        worst = std::max(worst, max_abs((h - hermitian_target(spec, t)).eval()));
    }
    return make_record("dyson-relation", "h(t) = eta H eta^-1 + i hbar eta' eta^-1",
                       worst, cfg.tol("dyson", 1e-6));
}

CheckRecord check_target_form(const RunConfig& cfg, const DysonSpec& spec) {
    const auto grid = linspace(0.0, cfg.t_max, 101);
    double worst = 0.0;
    for (double t : grid) {
        worst = std::max(worst, hermiticity_residual(hermitian_counterpart(spec, t, cfg.fd_step)));
    }
    std::string notes = "target form -1/2(omega I + chi sigma_z)";
    if (spec.params.spin == Spin::one) notes = "target form -1/2(omega I + X S_z)";
    if (spec.params.spin == Spin::three_half) notes = "target form -1/2(omega/2 I + Xi S_z)";
    return make_record("target-form", "h(t) Hermitian of the form -1/2(omega_s I + chi S_z)",
                       worst, cfg.tol("target", 1e-6), notes);
}

CheckRecord check_quasi_hermiticity(const RunConfig& cfg, const DysonSpec& spec) {
    const Matrix h = hamiltonian(spec.params);
    const auto rho = [&spec](double t) { return metric(spec, t); };
    const auto grid = linspace(0.0, cfg.t_max, 101);
    double worst = 0.0;
    for (double t : grid) {
        worst = std::max(worst,
                         quasi_hermiticity_residual(h, rho, t, cfg.fd_step, cfg.hbar));
    }
    return make_record("quasi-hermiticity", "H^dag rho - rho H = i hbar d rho/dt (rho = eta^2)",
                       worst, cfg.tol("quasiherm", 1e-6));
}

CheckRecord check_quasi_hermiticity_direct(const RunConfig& cfg, const DysonSpec& spec) {
    const char* anchor = "H^dag rho - rho H = i hbar d rho/dt (direct-route rho, random constants)";
    if (spec.params.spin == Spin::three_half) {
        return skipped_record("quasi-hermiticity-direct", anchor,
                              "no closed-form metric route for s=3/2");
    }
    const Matrix h = hamiltonian(spec.params);
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    const std::size_t nb = spec.params.spin == Spin::half ? 4 : 9;
    const auto grid = linspace(0.0, cfg.t_max, 41);
    double worst = 0.0;
    for (int draw = 0; draw < 5; ++draw) {
        MetricConstants mc;
        mc.b.resize(nb);
        for (auto& v : mc.b) v = unif(rng);
        const auto rho = [&](double t) { return metric_closed_form(mc, spec.params, t); };
        for (double t : grid) {
            worst = std::max(worst,
                             quasi_hermiticity_residual(h, rho, t, cfg.fd_step, cfg.hbar));
        }
    }
    return make_record("quasi-hermiticity-direct", anchor, worst, cfg.tol("quasiherm", 1e-6));
}

CheckRecord check_route_equivalence(const RunConfig& cfg, const DysonSpec& spec) {
    const char* anchor = "eta(t)^2 = rho_closed(b(c1,c2,c3), t)";
    if (spec.params.spin == Spin::three_half) {
        return skipped_record("route-equivalence", anchor,
                              "no closed-form metric route for s=3/2");
    }
    const MetricConstants mc = match_constants(spec);
    const auto grid = linspace(0.0, cfg.t_max, 101);
    double worst = 0.0;
    for (double t : grid) {
        worst = std::max(
            worst, max_abs((metric(spec, t) - metric_closed_form(mc, spec.params, t)).eval()));
    }
    return make_record("route-equivalence", anchor, worst, cfg.tol("route", 1e-10));
}

CheckRecord check_determinant(const RunConfig& cfg, const DysonSpec& spec) {
    const double closed = metric_determinant_closed_form(spec);
    const auto grid = linspace(0.0, cfg.t_max, 101);
    double lo = 1e300, hi = -1e300, worst = 0.0;
    for (double t : grid) {
        const double det = metric(spec, t).determinant().real();
        lo = std::min(lo, det);
        hi = std::max(hi, det);
        worst = std::max(worst, std::abs(det - closed) / std::abs(closed));
    }
    worst = std::max(worst, (hi - lo) / std::abs(closed));
    std::string notes;
    if (spec.params.spin == Spin::three_half) {
        notes = "closed form 6^12 (1-g)^6 c1^8 (1+c2^2+c3^2)^6/(1+g)^18";
    }
    return make_record("determinant", "det rho closed form; time independence",
                       worst, cfg.tol("det", 1e-10), notes);
}

CheckRecord check_positivity(const RunConfig& cfg, const DysonSpec& spec) {
    const auto grid = linspace(0.0, cfg.t_max, 101);
    double min_eig = 1e300;
    for (double t : grid) {
        min_eig = std::min(min_eig, min_eigenvalue_hermitian(metric(spec, t)));
    }
    auto rec = make_record("positivity", "rho(t) Hermitian positive-definite",
                           std::max(0.0, -min_eig), cfg.tol("positivity", 0.0));
    rec.notes = "min eigenvalue over grid = " + format_number(min_eig);
    if (min_eig <= 0.0) rec.pass = false;
    return rec;
}

CheckRecord check_unitarity(const RunConfig& cfg, const DysonSpec& spec) {
    const auto grid = linspace(0.0, cfg.t_max, 101);
    const Spectrum spct = closed_form_spectrum(spec.params);
    double worst = 0.0;
    // normalized eigenstate norms (closed-form N for s=1/2, numeric for s=1)
    if (spec.params.spin != Spin::three_half) {
        for (const auto& lv : spct.levels) {
            const double n = normalization_constant(spec, lv.k);
            for (double t : grid) {
                const Vector psi =
                    lv.state * std::exp(-kI * lv.energy * t / spec.params.hbar);
                const Complex nn = n * metric_inner_product(psi, psi, metric(spec, t));
                worst = std::max(worst, std::abs(nn - 1.0));
            }
        }
    }
    // metric-norm conservation for a fixed superposition, all spins
    std::vector<Complex> coeffs(spct.levels.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        coeffs[i] = Complex(0.35 + 0.1 * double(i), 0.2 - 0.07 * double(i));
    }
    const Vector psi0 = closed_form_state(spec.params, coeffs, 0.0);
    const double norm0 = metric_inner_product(psi0, psi0, metric(spec, 0.0)).real();
    for (double t : grid) {
        const Vector psi = closed_form_state(spec.params, coeffs, t);
        const double n = metric_inner_product(psi, psi, metric(spec, t)).real();
        worst = std::max(worst, std::abs(n - norm0) / norm0);
    }
    return make_record("unitarity", "N_k <Psi_k|rho Psi_k> = 1; <Psi|rho Psi> conserved",
                       worst, cfg.tol("unitarity", 1e-9));
}

CheckRecord check_overlap(const RunConfig& cfg, const DysonSpec& spec) {
    const auto grid = linspace(0.0, cfg.t_max, 51);
    double worst = 0.0;
    std::string notes;
    if (spec.params.spin == Spin::half) {
        const Complex formula = eigenstate_overlap(spec);
        for (double t : grid) {
            const Vector php = map_eigenstate(spec, +1, t, true);
            const Vector phm = map_eigenstate(spec, -1, t, true);
            worst = std::max(worst, std::abs(phm.dot(php) - formula));
            worst = std::max(worst, std::abs(php.dot(phm) - std::conj(formula)));
        }
        notes = "<phi_-|phi_+> = gamma(-c3+ic2)/sqrt(phi^2+c2^2+c3^2), time-independent";
    } else {
        // representation equivalence <phi|phi> = <Psi|rho Psi> for a superposition
        const Spectrum spct = closed_form_spectrum(spec.params);
        std::vector<Complex> coeffs(spct.levels.size(), Complex(0.5, -0.25));
        for (double t : grid) {
            const Vector psi = closed_form_state(spec.params, coeffs, t);
            const Vector phi = map_state(spec, psi, t);
            const Complex a = phi.dot(phi);
            const Complex b = metric_inner_product(psi, psi, metric(spec, t));
            worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
        notes = "representation equivalence <phi|phi> = <Psi|rho Psi>";
    }
    return make_record("overlap", "inner products agree across representations", worst,
                       cfg.tol("overlap", 1e-9), notes);
}

CheckRecord check_energy(const RunConfig& cfg, const DysonSpec& spec) {
    const auto grid = linspace(0.0, cfg.t_max, 41);
    double worst = 0.0;
    for (const auto& lv : closed_form_spectrum(spec.params).levels) {
        for (double t : grid) {
            const EnergyCheck ec = energy_expectation_check(spec, lv.k, t, cfg.fd_step);
            worst = std::max(worst, std::abs(ec.lhs - ec.rhs));
            if (ec.closed) {
                worst = std::max(worst, std::abs(ec.lhs - *ec.closed));
            }
        }
    }
    return make_record("energy", "<phi|h phi> = N <Psi|rho Htilde Psi> (+ closed form, s=1/2)",
                       worst, cfg.tol("energy", 1e-6));
}

}  // namespace

VerificationReport run_verification(const RunConfig& cfg) {
    cfg.validate();
    VerificationReport report;
    report.config = cfg;
    report.version = kVersion;

    report.checks.push_back(check_spin_algebra(cfg));
    report.checks.push_back(check_spectrum(cfg));

    const bool metric_defined = std::abs(cfg.gamma) < 1.0;
    if (metric_defined) {
        const DysonSpec spec =
            make_dyson_spec(cfg.params(), cfg.c1, cfg.c2, cfg.c3, cfg.branch);
        report.checks.push_back(check_ep(cfg, spec));
        report.checks.push_back(check_dyson(cfg, spec));
        report.checks.push_back(check_target_form(cfg, spec));
        report.checks.push_back(check_quasi_hermiticity(cfg, spec));
        report.checks.push_back(check_quasi_hermiticity_direct(cfg, spec));
        report.checks.push_back(check_route_equivalence(cfg, spec));
        report.checks.push_back(check_determinant(cfg, spec));
        report.checks.push_back(check_positivity(cfg, spec));
        report.checks.push_back(check_unitarity(cfg, spec));
        report.checks.push_back(check_overlap(cfg, spec));
        report.checks.push_back(check_energy(cfg, spec));
    } else {
        const std::string why = std::abs(cfg.gamma) > 1.0
                                    ? "broken regime |gamma| > 1, no positive metric"
                                    : "exceptional point |gamma| = 1, H defective";
        for (const char* name :
             {"ep-constraint", "dyson-relation", "target-form", "quasi-hermiticity",
              "quasi-hermiticity-direct", "route-equivalence", "determinant", "positivity",
              "unitarity", "overlap", "energy"}) {
            report.checks.push_back(skipped_record(name, "", why));
        }
    }

    report.summary = std::all_of(report.checks.begin(), report.checks.end(),
                                 [](const CheckRecord& r) { return r.pass; });
    return report;
}

std::string report_to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["summary"] = report.summary;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"anchor", c.anchor},
                               {"residual", c.residual},
                               {"tol", c.tol},
                               {"pass", c.pass},
                               {"notes", c.notes}});
    }
    const auto& cfg = report.config;
    j["config"] = {{"spin", to_string(cfg.spin)},
                   {"gamma", cfg.gamma},
                   {"omega", cfg.omega},
                   {"c1", cfg.c1},
                   {"c2", cfg.c2},
                   {"c3", cfg.c3},
                   {"branch", cfg.branch},
                   {"hbar", cfg.hbar},
                   {"tmax", cfg.t_max},
                   {"dt", cfg.dt},
                   {"fd_step", cfg.fd_step},
                   {"seed", cfg.seed},
                   {"format", cfg.format},
                   {"out", cfg.out},
                   {"tolerances", cfg.tolerances}};
    j["version"] = report.version;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const VerificationReport& report) {
    std::ostringstream os;
    os << "name,anchor,residual,tol,pass,notes\n";
    const auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += "\"\"";
            else q += ch;
        }
        return q + "\"";
    };
    for (const auto& c : report.checks) {
        os << c.name << ',' << quote(c.anchor) << ',' << format_number(c.residual) << ','
           << format_number(c.tol) << ',' << (c.pass ? "true" : "false") << ','
           << quote(c.notes) << '\n';
    }
    return os.str();
}

}  // namespace spinmetric
