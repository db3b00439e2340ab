// verification.hpp — the residual-check battery behind the `verify` command
// and its machine-readable report.

#pragma once

#include "spinmetric/evolution.hpp"

#include <map>
#include <string>
#include <vector>

namespace spinmetric {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    Spin spin = Spin::half;
    double gamma = 0.6;
    double omega = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    double c3 = 0.0;
    int branch = +1;
    double hbar = 1.0;
    double t_max = 10.0;
    double dt = 1e-3;
    double fd_step = 1e-5;
    unsigned seed = 20111u;
    std::string format = "json";  // json | csv
    std::string out = "-";        // path or "-" for stdout
    std::map<std::string, double> tolerances;  // overrides by check name

    void validate() const;            // throws ConfigError
    double tol(const std::string& name, double fallback) const;
    ModelParams params() const;
};

struct CheckRecord {
    std::string name;
    std::string anchor;   // the relation being checked, in formula form
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string notes;
};

struct VerificationReport {
    bool summary = false;
    std::vector<CheckRecord> checks;
    RunConfig config;
    std::string version = kVersion;
};

// Runs, in order: spin-operator algebra, spectrum cross-check, EP constraint,
// Dyson relation, target-form match, quasi-Hermiticity, route equivalence,
// determinant formulas, positivity scan, unitarity, overlap and energy
// identities. In the broken regime (|gamma| > 1) the metric-dependent checks
// are recorded as skipped.
VerificationReport run_verification(const RunConfig& cfg);

std::string report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

// 17-significant-digit formatting used by every CSV/JSON emitter.
std::string format_number(double v);

}  // namespace spinmetric
