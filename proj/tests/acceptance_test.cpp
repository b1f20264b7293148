#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "yv/suites.hpp"

using namespace yv;

// Each case below is one gate of the release checklist. A gate passes only
// when every run inside it comes back "verified" within its serial time
// budget; the verdict is printed as a single line so the log reads as a
// checklist.

namespace {

SuiteSpec base(const std::string& suite) {
    SuiteSpec s;
    s.suite = suite;
    return s;
}

SuiteSpec with_twist(SuiteSpec s, const std::string& tw) {
    s.twist_name = tw;
    s.twist = (tw == "symplectic") ? TwistData::antisymmetric_blocks(s.N)
                                   : TwistData::symmetric_identity(s.N);
    return s;
}

SuiteSpec at_level(SuiteSpec s, const Rational& c) {
    s.level = c;
    s.level_set = true;
    return s;
}

bool run_gate(int id, const std::string& label, long budget_ms,
              const std::vector<SuiteSpec>& specs) {
    auto t0 = std::chrono::steady_clock::now();
    std::string offender;
    for (const auto& s : specs) {
        auto r = run_suite(s);
        if (r.status != "verified" && offender.empty())
            offender = s.suite + " -> " + r.status +
                       (r.residual.empty() ? "" : " (" + r.residual + ")");
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    const bool ok = offender.empty() && ms <= budget_ms;
    std::printf("criterion %2d %s (%lld ms, budget %ld ms): %s%s%s\n", id,
                ok ? "PASS" : "FAIL", static_cast<long long>(ms), budget_ms, label.c_str(),
                offender.empty() ? "" : " | first offender: ", offender.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(offender.empty(), "criterion ", id, ": ", offender);
    CHECK_MESSAGE(ms <= budget_ms, "criterion ", id, " exceeded budget: ", ms, " ms");
    return ok;
}

}  // namespace

TEST_CASE("gate 01: quantum Yang-Baxter, exact") {
    std::vector<SuiteSpec> specs;
    for (int N : {2, 3}) {
        SuiteSpec s = base("ybe");
        s.N = N;
        specs.push_back(s);
    }
    run_gate(1, "rational R-matrix satisfies the braid relation exactly at N=2,3", 5000, specs);
}

TEST_CASE("gate 02: normalization series, inverse and transpose relations") {
    std::vector<SuiteSpec> specs;
    for (int N : {2, 3, 4}) {
        SuiteSpec g = base("g-series");
        g.N = N;
        specs.push_back(g);
        for (const char* name : {"unitarity", "crossing"}) {
            SuiteSpec s = base(name);
            s.N = N;
            s.h_order = 6;
            specs.push_back(s);
        }
    }
    run_gate(2, "normalization recurrence plus inverse/transpose identities mod h^6 at N=2,3,4",
             30000, specs);
}

TEST_CASE("gate 03: fusion of the permutation action") {
    std::vector<SuiteSpec> specs;
    for (int N : {2, 3}) {
        SuiteSpec s = base("fusion");
        s.N = N;
        specs.push_back(s);
    }
    run_gate(3, "consecutive evaluation of R-chains reproduces every projector up to four boxes",
             60000, specs);
}

TEST_CASE("gate 04: exchange relations for the double series") {
    std::vector<SuiteSpec> specs;
    for (int lvl : {0, -2}) specs.push_back(at_level(base("rtt-series"), Rational(lvl)));
    run_gate(4, "creation/annihilation/mixed exchange relations mod h^3 at levels 0 and -2",
             300000, specs);
}

TEST_CASE("gate 05: reflection series relations, both fixed matrices") {
    std::vector<SuiteSpec> specs;
    for (const char* tw : {"orthogonal", "symplectic"})
        for (const char* name : {"srel", "usflg", "rsrs", "rsrs-multi"})
            specs.push_back(with_twist(base(name), tw));
    run_gate(5, "symmetry, unitarity and exchange relations of the reflection series mod h^3",
             600000, specs);
}

TEST_CASE("gate 06: traced products are central at the critical level") {
    SuiteSpec s = base("centrality-critical");
    s.modes = 2;
    run_gate(6, "traced-product coefficients commute with generator modes r<=2 mod h^3", 1200000,
             {s});
}

TEST_CASE("gate 07: invariant vectors and their interplay") {
    std::vector<SuiteSpec> specs = {base("invariants"), base("commute-invariants"),
                                    base("center-commute"), base("invariant-generation")};
    run_gate(7, "invariance, pairwise commutation and generation of invariant vectors", 600000,
             specs);
}

TEST_CASE("gate 08: determinant factorization of the traced product") {
    std::vector<SuiteSpec> specs = {at_level(base("gamma-factorization"), Rational(0)),
                                    at_level(base("sdet-identity"), Rational(0))};
    run_gate(8, "scalar ratio extraction and the two-determinant trace identity at level 0",
             600000, specs);
}

TEST_CASE("gate 09: quasi associativity with polynomial clearing") {
    run_gate(9, "iterated vertex actions agree after clearing, single-factor powers never clear",
             600000, {base("quasi-assoc")});
}

TEST_CASE("gate 10: leading symbols of the lowering modes") {
    std::vector<SuiteSpec> specs;
    for (const char* tw : {"orthogonal", "symplectic"})
        specs.push_back(with_twist(base("classical-limit"), tw));
    run_gate(10, "h^0 symbols, parity and rank of the mode families for r<=3, exact", 60000,
             specs);
}

TEST_CASE("gate 11: rewrite system is confluent") {
    run_gate(11, "seeded normalizations agree and the double exchange closes mod h^3", 120000,
             {base("rewrite-confluence")});
}
