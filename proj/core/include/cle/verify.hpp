#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cle::verify {

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    bool gating = true;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    uint64_t seed = 0;
    int jobs = 1;
    std::ostream* progress = nullptr;  // stream per-criterion lines as they finish
};

// Suites: "discrete" (1-4), "onmodel" (5), "stochastic" (6-8),
// "loewner" (9, 10, 14), "cle" (11-13), or "all".
std::vector<CheckResult> run_suite(const std::string& suite, const Options& opt);

// Prints one pass/fail line per criterion (unless they were already
// streamed) plus a summary; returns 0 when every gating criterion passed,
// 1 otherwise.
int report(const std::vector<CheckResult>& results, std::ostream& out,
           bool print_lines = true);

}  // namespace cle::verify
