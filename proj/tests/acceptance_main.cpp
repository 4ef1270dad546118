#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "dirichlet/acceptance.hpp"
#include "dirichlet/cli.hpp"

using dirichlet::acceptance::CriterionResult;

namespace {

void print_line(const CriterionResult& r, bool timed_ok, double seconds) {
    std::printf("criterion %2d: %s  %s  (%.2f s)\n", r.id, r.passed && timed_ok ? "PASS" : "FAIL", r.title.c_str(),
                seconds);
    for (const auto& [key, value] : r.metrics) std::printf("    %-40s %.6g\n", key.c_str(), value);
    if (!r.note.empty()) std::printf("    note: %s\n", r.note.c_str());
    if (!timed_ok) std::printf("    over the %.0f s limit\n", r.limit_seconds);
}

}  // namespace

int main() {
    bool all = true;
    for (int id = 1; id <= dirichlet::acceptance::kLibraryCriteria; ++id) {
        const CriterionResult r = dirichlet::acceptance::run_criterion(id);
        double total = 0.0;
        for (double s : r.part_seconds) total += s;
        print_line(r, r.within_time(), total);
        all = all && r.passed && r.within_time();
    }

    const auto start = std::chrono::steady_clock::now();
    std::ostringstream first;
    std::ostringstream second;
    std::ostringstream sink;
    const int code_a = dirichlet::cli::run({"demo", "--json"}, first, sink);
    const int code_b = dirichlet::cli::run({"demo", "--json"}, second, sink);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CriterionResult determinism{10, "demo --json byte-identical across two runs"};
    determinism.passed = !first.str().empty() && first.str() == second.str();
    determinism.metrics = {{"bytes", double(first.str().size())}, {"exit_code_run_1", double(code_a)},
                           {"exit_code_run_2", double(code_b)}};
    print_line(determinism, true, seconds);
    all = all && determinism.passed;

    std::printf("%s\n", all ? "all criteria pass" : "some criteria fail");
    return all ? 0 : 1;
}
