#include "yv/report.hpp"

#include <sstream>

#include <json.hpp>

namespace yv {

std::string report_text(const SuiteResult& r) {
    std::ostringstream out;
    out << "suite: " << r.suite << "\n";
    out << "status: " << r.status << "\n";
    out << "precision: " << r.precision << "\n";
    out << "params:";
    for (const auto& [k, v] : r.params) out << " " << k << "=" << v;
    out << "\n";
    if (!r.residual.empty()) out << "residual: " << r.residual << "\n";
    out << "elapsed_ms: " << r.elapsed_ms << "\n";
    return out.str();
}

static nlohmann::ordered_json json_one(const SuiteResult& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["suite"] = r.suite;
    nlohmann::ordered_json p;
    for (const auto& [k, v] : r.params) p[k] = v;
    j["params"] = p;
    j["status"] = r.status;
    j["precision"] = r.precision;
    if (r.residual.empty())
        j["residual"] = nullptr;
    else
        j["residual"] = r.residual;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

std::string report_json(const SuiteResult& r) { return json_one(r).dump(2) + "\n"; }

std::string report_json(const std::vector<SuiteResult>& rs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rs) arr.push_back(json_one(r));
    return arr.dump(2) + "\n";
}

int exit_code_for(const std::vector<SuiteResult>& rs) {
    int code = 0;
    for (const auto& r : rs) {
        if (r.status == "failed") return 1;
        if (r.status == "inconclusive-truncation") code = 2;
    }
    return code;
}

}  // namespace yv
