#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <json.hpp>

#include "yv/report.hpp"
#include "yv/suites.hpp"

using namespace yv;

namespace {

SuiteSpec spec_for(const std::string& name) {
    SuiteSpec s;
    s.suite = name;
    return s;
}

SuiteSpec quick(const std::string& name) {
    SuiteSpec s = spec_for(name);
    s.h_order = 2;
    s.degree = 1;
    s.modes = 2;
    s.win_lo = -4;
    s.win_hi = 4;
    return s;
}

}  // namespace

TEST_CASE("registry is complete and stable") {
    const auto& names = suite_names();
    CHECK(names.size() == 24);
    for (const auto& n : names) CHECK(known_suite(n));
    CHECK(!known_suite("no-such-suite"));
    CHECK(names.front() == "ybe");
    CHECK(std::count(names.begin(), names.end(), "gamma-factorization") == 1);
}

TEST_CASE("bad parameters are rejected") {
    CHECK_THROWS_AS(run_suite(spec_for("no-such-suite")), std::invalid_argument);

    SuiteSpec tiny = spec_for("ybe");
    tiny.N = 1;
    CHECK_THROWS_AS(run_suite(tiny), std::invalid_argument);

    SuiteSpec wrong_level = spec_for("centrality-critical");
    wrong_level.level = Rational(0);
    wrong_level.level_set = true;
    CHECK_THROWS_AS(run_suite(wrong_level), std::invalid_argument);

    SuiteSpec crit_gamma = spec_for("gamma-factorization");
    crit_gamma.level = Rational(-1);
    crit_gamma.level_set = true;
    CHECK_THROWS_AS(run_suite(crit_gamma), std::invalid_argument);

    SuiteSpec bad_nu = spec_for("fusion");
    bad_nu.nu = {1, 2};
    CHECK_THROWS_AS(run_suite(bad_nu), std::invalid_argument);

    SuiteSpec tall = spec_for("centrality-critical");
    tall.nu = {1, 1, 1};
    CHECK_THROWS_AS(run_suite(tall), std::invalid_argument);
}

TEST_CASE("exact suites verify at small sizes") {
    for (const char* name : {"ybe", "unitarity", "crossing", "g-series", "shuffle", "fusion"}) {
        auto r = run_suite(spec_for(name));
        CAPTURE(name);
        CHECK(r.status == "verified");
        CHECK(r.residual.empty());
    }
}

TEST_CASE("classical limit verifies for both fixed matrices") {
    for (const char* tw : {"orthogonal", "symplectic"}) {
        SuiteSpec s = spec_for("classical-limit");
        s.twist_name = tw;
        s.twist = (std::string(tw) == "orthogonal") ? TwistData::symmetric_identity(2)
                                                    : TwistData::antisymmetric_blocks(2);
        auto r = run_suite(s);
        CAPTURE(tw);
        CHECK(r.status == "verified");
    }
}

TEST_CASE("series suites verify at reduced size") {
    for (const char* name : {"rtt-series", "srel", "usflg", "welldef"}) {
        auto r = run_suite(quick(name));
        CAPTURE(name);
        CHECK(r.status == "verified");
    }
}

TEST_CASE("text report carries the verdict") {
    auto r = run_suite(spec_for("unitarity"));
    auto text = report_text(r);
    CHECK(text.find("unitarity") != std::string::npos);
    CHECK(text.find("verified") != std::string::npos);
}

TEST_CASE("json report is deterministic and well formed") {
    auto a = run_suite(spec_for("g-series"));
    auto b = run_suite(spec_for("g-series"));
    auto ja = nlohmann::ordered_json::parse(report_json(a));
    auto jb = nlohmann::ordered_json::parse(report_json(b));
    CHECK(ja["schema_version"] == 1);
    CHECK(ja["suite"] == "g-series");
    CHECK(ja["status"] == "verified");
    CHECK(ja.contains("params"));
    CHECK(ja.contains("precision"));
    CHECK(ja.contains("elapsed_ms"));
    ja["elapsed_ms"] = 0;
    jb["elapsed_ms"] = 0;
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("exit codes reflect the worst outcome") {
    SuiteResult ok;
    ok.status = "verified";
    SuiteResult bad;
    bad.status = "failed";
    SuiteResult fog;
    fog.status = "inconclusive-truncation";
    CHECK(exit_code_for({ok}) == 0);
    CHECK(exit_code_for({ok, fog}) == 2);
    CHECK(exit_code_for({ok, fog, bad}) == 1);
}
