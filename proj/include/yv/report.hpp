#pragma once

#include <string>
#include <vector>

#include "yv/suites.hpp"

namespace yv {

std::string report_text(const SuiteResult& r);
std::string report_json(const SuiteResult& r);
std::string report_json(const std::vector<SuiteResult>& rs);

// 0 all verified, 1 any failed, 2 any inconclusive.
int exit_code_for(const std::vector<SuiteResult>& rs);

}  // namespace yv
