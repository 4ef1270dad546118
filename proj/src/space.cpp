#include "dirichlet/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dirichlet/error.hpp"

namespace dirichlet {

Window default_window(std::size_t size) {
    if (size < 6) return {1, size};
    return {size / 2, size};
}

SpaceHandle make_space(FrequencySequence freq, WeightSequence weights, Window window, double threshold) {
    if (freq.size() != weights.size()) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(freq.size()) + " frequencies vs " +
                                                   std::to_string(weights.size()) + " weights");
    }
    ConditionVerdict verdict = check_condition_E(freq, weights, window, threshold);
    if (verdict.status == ConditionStatus::RefutedAtScale) {
        throw Error(ErrorCode::ConditionERefuted,
                    "log(beta_n)/lambda_n shows a non-increasing trend (slope " + std::to_string(verdict.slope) +
                        ")");
    }
    return SpaceHandle(std::move(freq), std::move(weights), verdict);
}

SpaceHandle make_space(FrequencySequence freq, WeightSequence weights) {
    const Window window = default_window(freq.size());
    return make_space(std::move(freq), std::move(weights), window, kDefaultConditionThreshold);
}

double norm(const SpaceHandle& space, const DirichletSeries& f) {
    require_same_frequencies(space.frequencies(), f.frequencies());
    const auto coeffs = f.coefficients();
    const auto log_beta = space.weights().log_values();
    // Scale by the largest |a_n| beta_n so that huge and tiny weights stay in range.
    double scale = kNegInf;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        scale = std::max(scale, coeffs[i].log_abs() + log_beta[i]);
    }
    if (scale == kNegInf) return 0.0;
    CompensatedSum sum;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        const double term = std::abs(coeffs[i].mantissa) * std::exp(coeffs[i].exponent + log_beta[i] - scale);
        sum.add(term * term);
    }
    const double root = std::sqrt(sum.value());
    return scale == 0.0 ? root : root * std::exp(scale);
}

Complex inner(const SpaceHandle& space, const DirichletSeries& f, const DirichletSeries& g) {
    require_same_frequencies(space.frequencies(), f.frequencies());
    require_same_frequencies(f.frequencies(), g.frequencies());
    const auto a = f.coefficients();
    const auto b = g.coefficients();
    const auto log_beta = space.weights().log_values();
    double scale = kNegInf;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() || b[i].is_zero()) continue;
        scale = std::max(scale, a[i].log_abs() + b[i].log_abs() + 2.0 * log_beta[i]);
    }
    if (scale == kNegInf) return {};
    CompensatedComplexSum sum;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() || b[i].is_zero()) continue;
        sum.add(a[i].mantissa * std::conj(b[i].mantissa) *
                std::exp(a[i].exponent + b[i].exponent + 2.0 * log_beta[i] - scale));
    }
    return scale == 0.0 ? sum.value() : sum.value() * std::exp(scale);
}

DirichletSeries probe(const SpaceHandle& space, std::size_t k) {
    if (k < 1 || k > space.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "probe index " + std::to_string(k) + " outside [1, " +
                                                    std::to_string(space.size()) + "]");
    }
    return DirichletSeries::monomial(space.frequencies(), k,
                                     ScaledComplex{Complex{1.0, 0.0}, -space.weights().log_value(k)});
}

DirichletSeries make_constant(const SpaceHandle& space, Complex c) {
    if (c == Complex{}) return DirichletSeries::zero(space.frequencies());
    if (!space.contains_constants()) {
        throw Error(ErrorCode::ConstantNotRepresentable, "nonzero constant needs lambda_1 = 0");
    }
    return DirichletSeries::monomial(space.frequencies(), 1, ScaledComplex::from(c));
}

}  // namespace dirichlet
