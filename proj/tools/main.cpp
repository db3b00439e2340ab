// spinmetric — construct Hermitian / non-Hermitian equivalence pairs for the
// one-site spin models and verify their defining identities numerically.
//
// Subcommands:
//   verify   run the full residual-check battery, emit a report
//   evolve   propagate a state in both representations, emit time series
//   scan     sweep gamma, emit spectra and metric positivity per point
//   ep       compare the closed-form chi against an RK4 integration
//
// Exit status: 0 success, 1 verification failure, 2 usage/config error.

#include "spinmetric/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace spinmetric;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

struct CliOptions {
    std::string spin = "1/2";
    RunConfig cfg;
    std::vector<std::string> tol_overrides;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--spin", opt.spin, "spin label: 1/2, 1 or 3/2")
        ->check(CLI::IsMember({"1/2", "0.5", "1", "3/2", "1.5"}));
    cmd->add_option("--gamma", opt.cfg.gamma, "non-Hermiticity coupling");
    cmd->add_option("--omega", opt.cfg.omega, "diagonal coupling");
    cmd->add_option("--c1", opt.cfg.c1, "Dyson-map integration constant");
    cmd->add_option("--c2", opt.cfg.c2, "Ermakov-Pinney constant c2");
    cmd->add_option("--c3", opt.cfg.c3, "Ermakov-Pinney constant c3");
    cmd->add_option("--branch", opt.cfg.branch, "denominator branch sign, +1 or -1");
    cmd->add_option("--hbar", opt.cfg.hbar, "Planck constant");
    cmd->add_option("--tmax", opt.cfg.t_max, "time horizon");
    cmd->add_option("--dt", opt.cfg.dt, "integration step");
    cmd->add_option("--fd-step", opt.cfg.fd_step, "finite-difference step");
    cmd->add_option("--seed", opt.cfg.seed, "seed for randomized draws");
    cmd->add_option("--format", opt.cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.cfg.out, "output path, '-' for stdout");
    cmd->add_option("--tol", opt.tol_overrides, "tolerance override NAME=VALUE")
        ->expected(-1);
    cmd->set_config("--config", "", "flat key=value config file; flags override");
}

void finalize(CliOptions& opt) {
    opt.cfg.spin = parse_spin(opt.spin);
    for (const auto& s : opt.tol_overrides) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
            throw ConfigError("bad --tol override '" + s + "', expected NAME=VALUE");
        }
        opt.cfg.tolerances[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    }
    opt.cfg.validate();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << text;
    if (!os) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------- verify ----------------------------------

int cmd_verify(const CliOptions& opt) {
    const VerificationReport report = run_verification(opt.cfg);
    const std::string text =
        opt.cfg.format == "json" ? report_to_json(report) : report_to_csv(report);
    write_output(opt.cfg.out, text);
    for (const auto& c : report.checks) {
        std::cerr << (c.pass ? "[pass] " : "[FAIL] ") << c.name
                  << "  residual=" << format_number(c.residual)
                  << " tol=" << format_number(c.tol)
                  << (c.notes.empty() ? "" : "  (" + c.notes + ")") << "\n";
    }
    std::cerr << (report.summary ? "verification passed" : "verification FAILED") << "\n";
    return report.summary ? kExitOk : kExitVerifyFail;
}

// ---------------------------------- evolve ----------------------------------

std::vector<Complex> parse_coeffs(const std::vector<std::string>& raw) {
    std::vector<Complex> out;
    for (const auto& s : raw) {
        const auto colon = s.find(':');
        if (colon == std::string::npos) {
            out.emplace_back(std::stod(s), 0.0);
        } else {
            out.emplace_back(std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1)));
        }
    }
    return out;
}

int cmd_evolve(const CliOptions& opt, const std::vector<std::string>& raw_coeffs) {
    const RunConfig& cfg = opt.cfg;
    if (std::abs(cfg.gamma) >= 1.0) {
        throw ConfigError("evolve requires |gamma| < 1 (unbroken regime)");
    }
    std::vector<Complex> coeffs = parse_coeffs(raw_coeffs);
    const int d = dimension(cfg.spin);
    if (coeffs.empty()) coeffs.assign(static_cast<std::size_t>(d), Complex(0.0, 0.0));
    if (static_cast<int>(coeffs.size()) != d) {
        throw ConfigError("expected " + std::to_string(d) + " coefficients");
    }
    double total = 0.0;
    for (const auto& c : coeffs) total += std::abs(c);
    if (total == 0.0) throw ConfigError("null state: all coefficients are zero");

    const DysonSpec spec = make_dyson_spec(cfg.params(), cfg.c1, cfg.c2, cfg.c3, cfg.branch);

    // normalize the whole trajectory by the metric norm at t=0
    const Vector psi0 = closed_form_state(cfg.params(), coeffs, 0.0);
    const double norm0 =
        std::sqrt(metric_inner_product(psi0, psi0, metric(spec, 0.0)).real());
    for (auto& c : coeffs) c /= norm0;

    std::ostringstream os;
    os << "t";
    for (int i = 0; i < d; ++i) os << ",psi" << i << "_re,psi" << i << "_im";
    for (int i = 0; i < d; ++i) os << ",phi" << i << "_re,phi" << i << "_im";
    os << ",norm_phi,norm_psi_rho,energy_phi,energy_psi_rho,chi\n";

    const int steps = static_cast<int>(std::llround(cfg.t_max / cfg.dt));
    for (int n = 0; n <= steps; ++n) {
        const double t = n * cfg.dt;
        const Vector psi = closed_form_state(cfg.params(), coeffs, t);
        const Vector phi = map_state(spec, psi, t);
        const Matrix rho = metric(spec, t);
        const Matrix h = hermitian_target(spec, t);
        const Matrix htilde = energy_operator(spec, t, cfg.fd_step);
        const double norm_phi = phi.dot(phi).real();
        const double norm_psi = metric_inner_product(psi, psi, rho).real();
        const double e_phi = phi.dot(h * phi).real();
        const double e_psi = metric_inner_product(psi, htilde * psi, rho).real();
        const double chi = spec.ep.value(t / cfg.hbar);

        os << format_number(t);
        for (int i = 0; i < d; ++i) {
            os << ',' << format_number(psi(i).real()) << ',' << format_number(psi(i).imag());
        }
        for (int i = 0; i < d; ++i) {
            os << ',' << format_number(phi(i).real()) << ',' << format_number(phi(i).imag());
        }
        os << ',' << format_number(norm_phi) << ',' << format_number(norm_psi) << ','
           << format_number(e_phi) << ',' << format_number(e_psi) << ','
           << format_number(chi) << '\n';
    }
    write_output(cfg.out, os.str());
    return kExitOk;
}

// ----------------------------------- scan -----------------------------------

int cmd_scan(const CliOptions& opt, double gamma_min, double gamma_max, int steps) {
    const RunConfig& cfg = opt.cfg;
    if (gamma_min < -2.0 || gamma_max > 2.0 || gamma_min > gamma_max) {
        throw ConfigError("scan range must lie within [-2, 2]");
    }
    if (steps < 1) throw ConfigError("scan needs at least one step");
    const int d = dimension(cfg.spin);

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::ostringstream os;
    os << "gamma";
    for (int i = 0; i < d; ++i) os << ",e" << i << "_re,e" << i << "_im";
    os << ",min_metric_eig,regime\n";

    for (int n = 0; n < steps; ++n) {
        const double g =
            steps == 1 ? gamma_min : gamma_min + (gamma_max - gamma_min) * n / (steps - 1);
        ModelParams p = cfg.params();
        p.gamma = g;
        const EigenSystem sys = eigenpairs(hamiltonian(p));
        double max_im = 0.0;
        for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
            max_im = std::max(max_im, std::abs(sys.values(i).imag()));
        }
        std::string regime = max_im > 1e-10 ? "broken" : "unbroken";
        if (sys.defective) regime = "exceptional";

        double min_eig = std::numeric_limits<double>::quiet_NaN();
        if (std::abs(g) < 1.0) {
            const DysonSpec spec = make_dyson_spec(p, cfg.c1, cfg.c2, cfg.c3, cfg.branch);
            min_eig = min_eigenvalue_hermitian(metric(spec, 0.0));
        }

        if (cfg.format == "json") {
            nlohmann::ordered_json row;
            row["gamma"] = g;
            row["eigenvalues"] = nlohmann::ordered_json::array();
            for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
                row["eigenvalues"].push_back(
                    {{"re", sys.values(i).real()}, {"im", sys.values(i).imag()}});
            }
            if (std::isnan(min_eig)) row["min_metric_eig"] = nullptr;
            else row["min_metric_eig"] = min_eig;
            row["regime"] = regime;
            rows.push_back(row);
        } else {
            os << format_number(g);
            for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
                os << ',' << format_number(sys.values(i).real()) << ','
                   << format_number(sys.values(i).imag());
            }
            os << ',' << (std::isnan(min_eig) ? "nan" : format_number(min_eig)) << ','
               << regime << '\n';
        }
    }
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["rows"] = rows;
        j["version"] = kVersion;
        write_output(cfg.out, j.dump(2) + "\n");
    } else {
        write_output(cfg.out, os.str());
    }
    return kExitOk;
}

// ------------------------------------ ep ------------------------------------

int cmd_ep(const CliOptions& opt) {
    const RunConfig& cfg = opt.cfg;
    if (std::abs(cfg.gamma) >= 1.0) {
        throw ConfigError("ep requires |gamma| < 1 (real frequency)");
    }
    const EPSolution sol = ep_solution(cfg.spin, cfg.gamma, cfg.c2, cfg.c3, cfg.branch);
    const int steps = static_cast<int>(std::llround(cfg.t_max / cfg.dt));
    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    for (int n = 0; n <= steps; ++n) grid[static_cast<std::size_t>(n)] = n * cfg.dt;
    const std::vector<double> numeric =
        ep_numeric_solve(sol.value(0.0), sol.deriv(0.0), sol.freq, sol.cubic, grid);

    std::ostringstream os;
    os << "t,chi_closed,chi_numeric,abs_diff\n";
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double closed = sol.value(grid[i]);
        const double diff = std::abs(closed - numeric[i]);
        worst = std::max(worst, diff);
        os << format_number(grid[i]) << ',' << format_number(closed) << ','
           << format_number(numeric[i]) << ',' << format_number(diff) << '\n';
    }
    write_output(cfg.out, os.str());
    std::cerr << "max |closed - numeric| = " << format_number(worst) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equivalence pairs of time-dependent Hermitian and time-independent "
                 "non-Hermitian spin Hamiltonians"};
    app.require_subcommand(1);

    CliOptions vopt, eopt, sopt, popt;
    std::vector<std::string> coeffs;
    double gamma_min = 0.0, gamma_max = 1.5;
    int scan_steps = 151;

    CLI::App* verify = app.add_subcommand("verify", "run the residual-check battery");
    add_common_options(verify, vopt);

    CLI::App* evolve = app.add_subcommand("evolve", "emit state/expectation time series");
    add_common_options(evolve, eopt);
    evolve->add_option("--coeff", coeffs,
                       "initial coefficients per level, descending k; 're' or 're:im'")
        ->expected(-1);

    CLI::App* scan = app.add_subcommand("scan", "sweep gamma");
    add_common_options(scan, sopt);
    scan->add_option("--gamma-min", gamma_min, "sweep start");
    scan->add_option("--gamma-max", gamma_max, "sweep end");
    scan->add_option("--steps", scan_steps, "number of points");

    CLI::App* ep = app.add_subcommand("ep", "closed-form vs numeric Ermakov-Pinney");
    add_common_options(ep, popt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help or error text
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) {
            finalize(vopt);
            return cmd_verify(vopt);
        }
        if (evolve->parsed()) {
            finalize(eopt);
            return cmd_evolve(eopt, coeffs);
        }
        if (scan->parsed()) {
            finalize(sopt);
            return cmd_scan(sopt, gamma_min, gamma_max, scan_steps);
        }
        if (ep->parsed()) {
            finalize(popt);
            return cmd_ep(popt);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
