#pragma once

#include <string>
#include <utility>
#include <vector>

#include "yv/rational.hpp"
#include "yv/twist.hpp"

namespace yv {

// Parameter bundle for one verification run. Every field has a usable
// default; the driver only overrides what the caller asked for.
struct SuiteSpec {
    std::string suite;
    int N = 2;
    std::string twist_name = "orthogonal";
    TwistData twist = TwistData::symmetric_identity(2);
    Rational level = Rational(0);
    bool level_set = false;  // false lets level-sensitive suites pick their own
    int h_order = 3;         // verify mod h^h_order
    int degree = 2;          // basis word length bound
    int modes = 3;           // basis letter depth bound
    int win_lo = -6;
    int win_hi = 6;
    std::vector<int> nu;                     // optional partition
    std::vector<std::vector<int>> tableau;   // optional standard filling
    int r_max = 6;
    int jobs = 1;
};

struct SuiteResult {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::string status;     // verified | failed | inconclusive-truncation
    std::string precision;  // what was actually certified
    std::string residual;   // worst offender location when failed
    long long elapsed_ms = 0;
};

const std::vector<std::string>& suite_names();
bool known_suite(const std::string& name);

// Runs one suite to completion. Throws std::invalid_argument when the
// spec is outside the suite's domain (bad N, wrong level kind, bad shape).
SuiteResult run_suite(const SuiteSpec& spec);

// Runs the whole registry with shared parameters, pooling across suites.
std::vector<SuiteResult> run_all(const SuiteSpec& base, int jobs);

}  // namespace yv
