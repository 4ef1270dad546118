#include "dirichlet/frequencies.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dirichlet/error.hpp"
#include "dirichlet/numeric.hpp"

namespace dirichlet {

namespace {

bool rule_agrees(double stored, double rule) {
    return std::abs(stored - rule) <= 1e-12 * std::max(1.0, std::abs(stored));
}

void check_index(std::size_t n, std::size_t size) {
    if (n < 1 || n > size) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "index " + std::to_string(n) + " outside [1, " + std::to_string(size) + "]");
    }
}

void check_window(Window window, std::size_t size) {
    if (window.first < 1 || window.first > window.last || window.last > size) {
        throw Error(ErrorCode::IndexOutOfRange, "window [" + std::to_string(window.first) + ", " +
                                                    std::to_string(window.last) + "] not inside [1, " +
                                                    std::to_string(size) + "]");
    }
}

ConditionVerdict assess(std::span<const double> index, std::span<const double> ratio, Window window,
                        double threshold) {
    ConditionVerdict v;
    v.window = window;
    v.threshold = threshold;
    v.points = ratio.size();
    if (ratio.empty()) return v;
    const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
    v.min_ratio = *lo;
    v.max_ratio = *hi;
    v.end_ratio = ratio.back();
    v.slope = least_squares_slope(index, ratio);
    if (ratio.size() < 3) return v;
    if (v.slope <= kTrendTolerance) {
        v.status = ConditionStatus::RefutedAtScale;
    } else if (v.max_ratio >= threshold) {
        v.status = ConditionStatus::SupportedAtScale;
    }
    return v;
}

ConditionVerdict check_power_ratio(const FrequencySequence& freq, const WeightSequence& weights,
                                   Window window, double threshold, double power) {
    if (freq.size() != weights.size()) {
        throw Error(ErrorCode::LengthMismatch, "frequencies and weights differ in length");
    }
    check_window(window, freq.size());
    std::vector<double> index;
    std::vector<double> ratio;
    for (std::size_t n = window.first; n <= window.last; ++n) {
        const double lambda = freq(n);
        if (lambda <= 0.0) continue;
        index.push_back(static_cast<double>(n));
        ratio.push_back(weights.log_value(n) / std::pow(lambda, power));
    }
    return assess(index, ratio, window, threshold);
}

}  // namespace

double FrequencySequence::operator()(std::size_t n) const {
    check_index(n, size());
    return data_->values[n - 1];
}

double FrequencySequence::extended(std::size_t n) const {
    if (n >= 1 && n <= size()) return data_->values[n - 1];
    if (!has_tail_rule()) {
        throw Error(ErrorCode::IndexOutOfRange, "frequency index beyond prefix and no tail rule");
    }
    return data_->tail_rule(n);
}

bool operator==(const FrequencySequence& a, const FrequencySequence& b) {
    return a.data_ == b.data_ || a.data_->values == b.data_->values;
}

FrequencySequence make_frequencies(std::vector<double> values, IndexRule tail_rule) {
    if (values.empty()) throw Error(ErrorCode::EmptySequence, "frequency list is empty");
    for (double v : values) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite frequency");
    }
    if (values.front() < 0.0) {
        throw Error(ErrorCode::NegativeFirstTerm, "lambda_1 = " + std::to_string(values.front()) + " < 0");
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw Error(ErrorCode::NotStrictlyIncreasing,
                        "lambda_" + std::to_string(i + 1) + " <= lambda_" + std::to_string(i));
        }
    }
    if (tail_rule) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!rule_agrees(values[i], tail_rule(i + 1))) {
                throw Error(ErrorCode::TailRuleMismatch,
                            "tail rule disagrees with stored lambda_" + std::to_string(i + 1));
            }
        }
    }
    auto data = std::make_shared<const FrequencySequence::Data>(
        FrequencySequence::Data{std::move(values), std::move(tail_rule)});
    return FrequencySequence(std::move(data));
}

FrequencySequence arithmetic_frequencies(std::size_t count, double first, double step) {
    std::vector<double> values(count);
    for (std::size_t n = 1; n <= count; ++n) values[n - 1] = first + static_cast<double>(n - 1) * step;
    return make_frequencies(std::move(values),
                            [first, step](std::size_t n) { return first + static_cast<double>(n - 1) * step; });
}

double WeightSequence::log_value(std::size_t n) const {
    check_index(n, size());
    return data_->log_values[n - 1];
}

double WeightSequence::value(std::size_t n) const { return std::exp(log_value(n)); }

double WeightSequence::extended_log(std::size_t n) const {
    if (n >= 1 && n <= size()) return data_->log_values[n - 1];
    if (!has_tail_rule()) {
        throw Error(ErrorCode::IndexOutOfRange, "weight index beyond prefix and no tail rule");
    }
    return data_->log_tail_rule(n);
}

WeightSequence make_weights(std::span<const double> values) {
    std::vector<double> logs;
    logs.reserve(values.size());
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::NonPositiveWeight, "weights must be finite and positive");
        }
        logs.push_back(std::log(v));
    }
    return make_log_weights(std::move(logs));
}

WeightSequence make_log_weights(std::vector<double> log_values, IndexRule log_tail_rule) {
    if (log_values.empty()) throw Error(ErrorCode::EmptySequence, "weight list is empty");
    for (double v : log_values) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonPositiveWeight, "log weight must be finite");
    }
    if (log_tail_rule) {
        for (std::size_t i = 0; i < log_values.size(); ++i) {
            if (!rule_agrees(log_values[i], log_tail_rule(i + 1))) {
                throw Error(ErrorCode::TailRuleMismatch,
                            "tail rule disagrees with stored log beta_" + std::to_string(i + 1));
            }
        }
    }
    auto data = std::make_shared<const WeightSequence::Data>(
        WeightSequence::Data{std::move(log_values), std::move(log_tail_rule)});
    return WeightSequence(std::move(data));
}

WeightSequence weights_from_log_rule(std::size_t count, IndexRule log_rule) {
    std::vector<double> logs(count);
    for (std::size_t n = 1; n <= count; ++n) logs[n - 1] = log_rule(n);
    return make_log_weights(std::move(logs), std::move(log_rule));
}

std::string_view to_string(ConditionStatus status) {
    switch (status) {
        case ConditionStatus::SupportedAtScale: return "SupportedAtScale";
        case ConditionStatus::RefutedAtScale: return "RefutedAtScale";
        case ConditionStatus::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

double estimate_L(const FrequencySequence& freq, std::size_t tail_start) {
    if (tail_start < 1 || tail_start > freq.size()) {
        throw Error(ErrorCode::EmptyTail, "tail start " + std::to_string(tail_start) + " beyond prefix");
    }
    double best = kNegInf;
    for (std::size_t n = tail_start; n <= freq.size(); ++n) {
        const double lambda = freq(n);
        if (lambda <= 0.0) continue;
        best = std::max(best, std::log(static_cast<double>(n)) / lambda);
    }
    if (best == kNegInf) throw Error(ErrorCode::EmptyTail, "no positive frequency in tail");
    return best;
}

ConditionVerdict check_condition_E(const FrequencySequence& freq, const WeightSequence& weights,
                                   Window window, double threshold) {
    return check_power_ratio(freq, weights, window, threshold, 1.0);
}

StrongConditionVerdict check_condition_S(const FrequencySequence& freq, const WeightSequence& weights,
                                         std::span<const double> alpha_grid, Window window,
                                         double threshold) {
    if (alpha_grid.empty()) throw Error(ErrorCode::InvalidArgument, "alpha grid is empty");
    for (double a : alpha_grid) {
        if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
    }
    StrongConditionVerdict out;
    bool all_refuted = true;
    std::optional<std::size_t> best_supported;
    std::size_t best_any = 0;
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        const double alpha = alpha_grid[i];
        out.per_alpha.push_back({alpha, check_power_ratio(freq, weights, window, threshold, 1.0 + alpha)});
        const ConditionVerdict& v = out.per_alpha.back().verdict;
        if (v.status != ConditionStatus::RefutedAtScale) all_refuted = false;
        if (v.status == ConditionStatus::SupportedAtScale &&
            (!best_supported || v.end_ratio > out.per_alpha[*best_supported].verdict.end_ratio)) {
            best_supported = i;
        }
        if (v.max_ratio > out.per_alpha[best_any].verdict.max_ratio) best_any = i;
    }
    const std::size_t pick = best_supported.value_or(best_any);
    out.verdict = out.per_alpha[pick].verdict;
    out.best_alpha = out.per_alpha[pick].alpha;
    if (best_supported) {
        out.verdict.status = ConditionStatus::SupportedAtScale;
    } else if (all_refuted) {
        out.verdict.status = ConditionStatus::RefutedAtScale;
    } else {
        out.verdict.status = ConditionStatus::Inconclusive;
    }
    return out;
}

}  // namespace dirichlet
