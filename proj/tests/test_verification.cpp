#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinmetric/verification.hpp"

#include <json.hpp>

using namespace spinmetric;

TEST_CASE("default config passes all checks for every spin") {
    for (Spin s : {Spin::half, Spin::one, Spin::three_half}) {
        RunConfig cfg;
        cfg.spin = s;
        cfg.gamma = 0.6;
        cfg.omega = 1.0;
        cfg.c1 = 1.0;
        cfg.c2 = 1.0;
        cfg.c3 = 0.0;
        const auto report = run_verification(cfg);
        CAPTURE(to_string(s));
        for (const auto& c : report.checks) {
            CAPTURE(c.name);
            CAPTURE(c.residual);
            CHECK(c.pass);
        }
        CHECK(report.summary);
    }
}

TEST_CASE("broken regime flags complex pairs and skips metric checks") {
    RunConfig cfg;
    cfg.gamma = 1.5;
    const auto report = run_verification(cfg);
    CHECK(report.summary);
    bool found = false;
    for (const auto& c : report.checks) {
        if (c.name == "spectrum") {
            found = true;
            CHECK(c.notes.find("broken regime") != std::string::npos);
        }
        if (c.name == "dyson-relation") {
            CHECK(c.notes.find("skipped") != std::string::npos);
        }
    }
    CHECK(found);
}

TEST_CASE("config validation") {
    RunConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.tolerances["dyson"] = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.format = "xml";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig{};
    cfg.branch = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("tolerance overrides propagate") {
    RunConfig cfg;
    cfg.gamma = 0.6;
    cfg.tolerances["dyson"] = 1e-20;  // absurdly tight: must fail
    const auto report = run_verification(cfg);
    CHECK_FALSE(report.summary);
    for (const auto& c : report.checks) {
        if (c.name == "dyson-relation") {
            CHECK(c.tol == 1e-20);
            CHECK_FALSE(c.pass);
        }
    }
}

TEST_CASE("JSON report schema is stable") {
    RunConfig cfg;
    cfg.gamma = 0.5;
    const auto report = run_verification(cfg);
    const auto j = nlohmann::json::parse(report_to_json(report));
    REQUIRE(j.contains("summary"));
    REQUIRE(j.contains("checks"));
    REQUIRE(j.contains("config"));
    REQUIRE(j.contains("version"));
    CHECK(j["summary"].is_boolean());
    CHECK(j["version"] == kVersion);
    REQUIRE(j["checks"].is_array());
    REQUIRE(!j["checks"].empty());
    for (const auto& c : j["checks"]) {
        for (const char* field : {"name", "anchor", "residual", "tol", "pass", "notes"}) {
            CAPTURE(field);
            CHECK(c.contains(field));
        }
    }
    for (const char* field : {"spin", "gamma", "omega", "c1", "c2", "c3", "branch",
                              "hbar", "tmax", "dt", "fd_step", "seed", "format", "out"}) {
        CAPTURE(field);
        CHECK(j["config"].contains(field));
    }
}

TEST_CASE("reports are byte-stable across runs") {
    RunConfig cfg;
    cfg.spin = Spin::one;
    cfg.gamma = -0.4;
    const auto a = run_verification(cfg);
    const auto b = run_verification(cfg);
    CHECK(report_to_json(a) == report_to_json(b));
    CHECK(report_to_csv(a) == report_to_csv(b));
}

TEST_CASE("number formatting round-trips 17 significant digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(200.0) == "200");
    const double v = -0.4685212856658182;
    CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("csv report layout") {
    RunConfig cfg;
    cfg.gamma = 0.6;
    const auto report = run_verification(cfg);
    const std::string csv = report_to_csv(report);
    CHECK(csv.rfind("name,anchor,residual,tol,pass,notes\n", 0) == 0);
    // one line per check plus header
    const auto lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == static_cast<long>(report.checks.size()) + 1);
}
