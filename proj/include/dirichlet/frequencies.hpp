#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace dirichlet {

/// Closed-form n -> value rule, indexed from 1.
using IndexRule = std::function<double(std::size_t)>;

/// Inclusive index range [first, last], 1-based.
struct Window {
    std::size_t first = 1;
    std::size_t last = 1;

    std::size_t size() const { return last >= first ? last - first + 1 : 0; }
    friend bool operator==(const Window&, const Window&) = default;
};

/**
 * Validated prefix lambda_1 < lambda_2 < ... < lambda_N of a frequency
 * sequence with lambda_1 >= 0, optionally extended beyond N by a rule.
 *
 * Copies share the underlying storage; two sequences compare equal when they
 * share storage or hold identical values.
 */
class FrequencySequence {
public:
    std::size_t size() const { return data_->values.size(); }

    /// lambda_n for 1 <= n <= size().
    double operator()(std::size_t n) const;

    std::span<const double> values() const { return data_->values; }

    bool has_tail_rule() const { return static_cast<bool>(data_->tail_rule); }

    /// lambda_n for any n >= 1: stored value inside the prefix, tail rule beyond.
    double extended(std::size_t n) const;

    bool contains_constants() const { return data_->values.front() == 0.0; }

    friend bool operator==(const FrequencySequence& a, const FrequencySequence& b);

private:
    struct Data {
        std::vector<double> values;
        IndexRule tail_rule;
    };
    explicit FrequencySequence(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;

    friend FrequencySequence make_frequencies(std::vector<double> values, IndexRule tail_rule);
};

FrequencySequence make_frequencies(std::vector<double> values, IndexRule tail_rule = {});

/// lambda_n = first + (n - 1) * step for n = 1..count, with the same tail rule.
FrequencySequence arithmetic_frequencies(std::size_t count, double first = 1.0, double step = 1.0);

/**
 * Positive weights beta_n, stored as log(beta_n) so that rapidly growing
 * families (e^{n^2}, sqrt(n!)) are representable far past the double range.
 */
class WeightSequence {
public:
    std::size_t size() const { return data_->log_values.size(); }

    double log_value(std::size_t n) const;
    /// beta_n itself; may overflow to +inf for large log weights.
    double value(std::size_t n) const;

    std::span<const double> log_values() const { return data_->log_values; }

    bool has_tail_rule() const { return static_cast<bool>(data_->log_tail_rule); }
    double extended_log(std::size_t n) const;

private:
    struct Data {
        std::vector<double> log_values;
        IndexRule log_tail_rule;
    };
    explicit WeightSequence(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;

    friend WeightSequence make_log_weights(std::vector<double> log_values, IndexRule log_tail_rule);
};

WeightSequence make_weights(std::span<const double> values);
WeightSequence make_log_weights(std::vector<double> log_values, IndexRule log_tail_rule = {});
/// log(beta_n) = log_rule(n) for n = 1..count; the rule also serves as tail rule.
WeightSequence weights_from_log_rule(std::size_t count, IndexRule log_rule);

enum class ConditionStatus { SupportedAtScale, RefutedAtScale, Inconclusive };

std::string_view to_string(ConditionStatus status);

struct ConditionVerdict {
    ConditionStatus status = ConditionStatus::Inconclusive;
    Window window;
    std::size_t points = 0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double end_ratio = 0.0;
    double slope = 0.0;
    double threshold = 0.0;
};

struct AlphaVerdict {
    double alpha = 0.0;
    ConditionVerdict verdict;
};

struct StrongConditionVerdict {
    ConditionVerdict verdict;
    std::optional<double> best_alpha;
    std::vector<AlphaVerdict> per_alpha;
};

/// Slope tolerance separating an increasing ratio trend from a flat/decreasing one.
inline constexpr double kTrendTolerance = 1e-9;

/**
 * Upper-envelope estimate of L = limsup log(n)/lambda_n over n in
 * [tail_start, N]; entries with lambda_n = 0 are skipped.
 */
double estimate_L(const FrequencySequence& freq, std::size_t tail_start);

/**
 * Finite-scale check of liminf log(beta_n)/lambda_n = +inf on a window.
 *
 * Refuted when the least-squares trend of the ratio is non-increasing
 * (slope <= kTrendTolerance); Supported when the trend is increasing and
 * the ratio reaches `threshold` inside the window; Inconclusive otherwise
 * or when fewer than three usable points exist.
 */
ConditionVerdict check_condition_E(const FrequencySequence& freq, const WeightSequence& weights,
                                   Window window, double threshold);

/// Same test on log(beta_n)/lambda_n^{1+alpha} for each alpha in the grid.
StrongConditionVerdict check_condition_S(const FrequencySequence& freq, const WeightSequence& weights,
                                         std::span<const double> alpha_grid, Window window,
                                         double threshold);

}  // namespace dirichlet
