#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dirichlet::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::vector<std::pair<std::string, double>> metrics;
    std::string note;
    /// Wall-clock seconds of each timed part; never part of any report body.
    std::vector<double> part_seconds;
    /// Per-part limit in seconds, 0 when the criterion has none.
    double limit_seconds = 0.0;

    bool within_time() const;
};

/// Criteria 1..9; criterion 10 (byte-identical demo output) is checked by the CLI layer.
inline constexpr int kLibraryCriteria = 9;

CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_library_criteria();

}  // namespace dirichlet::acceptance
