// Runs the full acceptance battery and prints one line per criterion.
// Usage: acceptance [--max-n N] [--seed S] [--quiet]

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "quadmod/cli.hpp"

int main(int argc, char** argv) {
    quadmod::cli::SuiteOptions opt;
    opt.progress = &std::cerr;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--max-n") && i + 1 < argc) opt.max_n = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
        else if (!std::strcmp(argv[i], "--quiet")) opt.progress = nullptr;
    }
    const auto results = quadmod::cli::run_suite(opt);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << "[" << r.status << "] " << r.id << " " << r.name << " (" << quadmod::cli::seconds_string(r.seconds)
                  << " s): " << r.detail << std::endl;
        failed += r.status == "FAIL";
    }
    std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << std::endl;
    return failed ? 1 : 0;
}
