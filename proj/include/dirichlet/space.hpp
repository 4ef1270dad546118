#pragma once

#include <cstddef>

#include "dirichlet/frequencies.hpp"
#include "dirichlet/series.hpp"

namespace dirichlet {

/// Default prefix length for spaces built from closed-form rules.
inline constexpr std::size_t kDefaultPrefix = 64;
inline constexpr double kDefaultConditionThreshold = 10.0;

/**
 * SpaceHandle: the Hilbert space of entire Dirichlet series with norm
 * ||f||^2 = sum |a_n|^2 beta_n^2, materialized on a finite prefix.
 *
 * Construction runs the finite-scale (E) check once and caches the verdict.
 * Refuted weights are rejected; Inconclusive ones are accepted but flagged.
 */
class SpaceHandle {
public:
    const FrequencySequence& frequencies() const { return freq_; }
    const WeightSequence& weights() const { return weights_; }
    const ConditionVerdict& e_verdict() const { return e_verdict_; }
    bool inconclusive_warning() const { return e_verdict_.status == ConditionStatus::Inconclusive; }
    std::size_t size() const { return freq_.size(); }
    bool contains_constants() const { return freq_.contains_constants(); }

private:
    SpaceHandle(FrequencySequence freq, WeightSequence weights, ConditionVerdict verdict)
        : freq_(std::move(freq)), weights_(std::move(weights)), e_verdict_(verdict) {}

    FrequencySequence freq_;
    WeightSequence weights_;
    ConditionVerdict e_verdict_;

    friend SpaceHandle make_space(FrequencySequence, WeightSequence, Window, double);
};

SpaceHandle make_space(FrequencySequence freq, WeightSequence weights, Window window, double threshold);

/// Uses the upper half of the prefix as window and kDefaultConditionThreshold.
SpaceHandle make_space(FrequencySequence freq, WeightSequence weights);

Window default_window(std::size_t size);

double norm(const SpaceHandle& space, const DirichletSeries& f);
Complex inner(const SpaceHandle& space, const DirichletSeries& f, const DirichletSeries& g);

/// q_k = beta_k^{-1} e^{-lambda_k z}.
DirichletSeries probe(const SpaceHandle& space, std::size_t k);

/// The constant function c; requires lambda_1 = 0 unless c = 0.
DirichletSeries make_constant(const SpaceHandle& space, Complex c);

}  // namespace dirichlet
