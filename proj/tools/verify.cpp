#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yv/report.hpp"
#include "yv/suites.hpp"

namespace {

constexpr int kUsageError = 64;

yv::Rational parse_rational(const std::string& s) {
    try {
        yv::Rational q(s);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--level", "expected an integer or p/q fraction: " + s);
    }
}

std::vector<int> parse_csv(const std::string& s, const std::string& opt) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError(opt, "expected comma-separated integers: " + s);
        }
    }
    if (out.empty()) throw CLI::ValidationError(opt, "empty list: " + s);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact series checks for the reflection-algebra engine"};
    app.get_formatter()->column_width(30);

    std::string suite;
    bool run_everything = false;
    std::string twist = "orthogonal";
    std::string level, window, nu, tableau, format = "text";
    yv::SuiteSpec spec;
    int jobs = 1;

    app.add_option("suite", suite, "Suite name (see --list)");
    app.add_flag("--all", run_everything, "Run every registered suite");
    bool list_only = false;
    app.add_flag("--list", list_only, "Print the suite registry and exit");
    app.add_option("--N", spec.N, "Matrix size")->check(CLI::PositiveNumber);
    app.add_option("--twist", twist,
                   "Fixed matrix: orthogonal, symplectic, or file:<path>");
    app.add_option("--level", level, "Level as integer or p/q");
    app.add_option("--h-order", spec.h_order, "Verify modulo this power of h")
        ->check(CLI::PositiveNumber);
    app.add_option("--degree", spec.degree, "Basis word length bound")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--modes", spec.modes, "Basis letter depth bound")->check(CLI::PositiveNumber);
    app.add_option("--window", window, "Spectral exponent window lo:hi");
    app.add_option("--nu", nu, "Partition, comma separated");
    app.add_option("--tableau", tableau, "Standard filling, rows separated by ;");
    app.add_option("--r-max", spec.r_max, "Largest clearing exponent to try")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--jobs", jobs, "Worker threads for --all")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);

        if (list_only) {
            for (const auto& name : yv::suite_names()) std::cout << name << "\n";
            return 0;
        }
        if (suite.empty() == !run_everything)
            throw CLI::ValidationError("suite", "pass exactly one suite name or --all");
        if (!suite.empty() && !yv::known_suite(suite))
            throw CLI::ValidationError("suite", "unknown suite: " + suite);

        if (twist == "orthogonal") {
            spec.twist = yv::TwistData::symmetric_identity(spec.N);
        } else if (twist == "symplectic") {
            spec.twist = yv::TwistData::antisymmetric_blocks(spec.N);
        } else if (twist.rfind("file:", 0) == 0) {
            spec.twist = yv::TwistData::from_file(twist.substr(5));
        } else {
            throw CLI::ValidationError("--twist", "unknown twist: " + twist);
        }
        spec.twist_name = twist;

        if (!level.empty()) {
            spec.level = parse_rational(level);
            spec.level_set = true;
        }
        if (!window.empty()) {
            auto colon = window.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--window", "expected lo:hi, got " + window);
            spec.win_lo = std::stoi(window.substr(0, colon));
            spec.win_hi = std::stoi(window.substr(colon + 1));
            if (spec.win_lo > spec.win_hi)
                throw CLI::ValidationError("--window", "empty window " + window);
        }
        if (!nu.empty()) spec.nu = parse_csv(nu, "--nu");
        if (!tableau.empty()) {
            std::stringstream ss(tableau);
            std::string row;
            while (std::getline(ss, row, ';')) spec.tableau.push_back(parse_csv(row, "--tableau"));
        }
        spec.jobs = jobs;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kUsageError;
    }

    std::vector<yv::SuiteResult> results;
    try {
        if (run_everything) {
            results = yv::run_all(spec, jobs);
        } else {
            spec.suite = suite;
            results.push_back(yv::run_suite(spec));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (format == "json") {
        std::cout << (results.size() == 1 ? yv::report_json(results.front())
                                          : yv::report_json(results))
                  << "\n";
    } else {
        for (const auto& r : results) std::cout << yv::report_text(r);
    }
    return yv::exit_code_for(results);
}
