#include "dirichlet/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dirichlet/error.hpp"

namespace dirichlet {

namespace {

constexpr std::size_t kMaxKernelTerms = 1'000'000;

double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Log of the geometric tail t * r / (1 - r) for log t and log r < 0.
double log_geometric_tail(double log_term, double log_ratio) {
    return log_term + log_ratio - std::log1p(-std::exp(log_ratio));
}

struct TermPlan {
    std::vector<double> lambda;
    std::vector<double> log_mag;
    double log_tail = kNegInf;
    double log_partial = kNegInf;
};

/// Chooses how many kernel terms to sum for real shift Re(z + conj(w)).
TermPlan plan_terms(const SpaceHandle& space, double shift, double tol, bool relative) {
    const FrequencySequence& freq = space.frequencies();
    const WeightSequence& weights = space.weights();
    const bool extend = freq.has_tail_rule() && weights.has_tail_rule();
    const std::size_t cap = extend ? kMaxKernelTerms : space.size();
    const double log_tol = std::log(tol);
    auto log_term = [&](std::size_t n) { return -2.0 * weights.extended_log(n) - freq.extended(n) * shift; };
    auto certified = [&](const TermPlan& plan) {
        return plan.log_tail < log_tol + (relative ? plan.log_partial : 0.0);
    };

    TermPlan plan;
    double current = log_term(1);
    double previous = kNegInf;
    for (std::size_t n = 1; n <= cap; ++n) {
        plan.lambda.push_back(freq.extended(n));
        plan.log_mag.push_back(current);
        plan.log_partial = log_add_exp(plan.log_partial, current);
        if (n == cap) {
            if (!extend && n >= 2) {
                const double log_ratio = current - previous;
                if (log_ratio < 0.0) {
                    plan.log_tail = log_geometric_tail(current, log_ratio);
                    if (certified(plan)) return plan;
                }
            }
            break;
        }
        const double next = log_term(n + 1);
        const double log_ratio = next - current;
        if (log_ratio < 0.0) {
            plan.log_tail = log_geometric_tail(current, log_ratio);
            if (certified(plan)) return plan;
        }
        previous = current;
        current = next;
    }
    throw Error(ErrorCode::TailNotCertifiable,
                "kernel terms at Re(z + conj w) = " + std::to_string(shift) + " do not certify tolerance " +
                    std::to_string(tol) + " within " + std::to_string(plan.lambda.size()) + " terms");
}

Complex sum_plan(const TermPlan& plan, double phase_shift) {
    const double scale = *std::max_element(plan.log_mag.begin(), plan.log_mag.end());
    if (scale == kNegInf) return {};
    CompensatedComplexSum sum;
    for (std::size_t i = 0; i < plan.lambda.size(); ++i) {
        sum.add(std::polar(std::exp(plan.log_mag[i] - scale), -plan.lambda[i] * phase_shift));
    }
    return sum.value() * std::exp(scale);
}

}  // namespace

KernelValue kernel_value(const SpaceHandle& space, ComplexPoint z, ComplexPoint w, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel tolerance must be positive");
    const Complex shift = z + std::conj(w);
    const TermPlan plan = plan_terms(space, shift.real(), tol, false);
    return {sum_plan(plan, shift.imag()), std::exp(plan.log_tail), plan.lambda.size()};
}

Complex kernel_partial_sum(const SpaceHandle& space, ComplexPoint z, ComplexPoint w, std::size_t terms) {
    const FrequencySequence& freq = space.frequencies();
    const WeightSequence& weights = space.weights();
    const Complex shift = z + std::conj(w);
    CompensatedComplexSum sum;
    for (std::size_t n = 1; n <= terms; ++n) {
        sum.add(std::exp(-2.0 * weights.extended_log(n) - freq.extended(n) * shift));
    }
    return sum.value();
}

double kernel_norm_sq(const SpaceHandle& space, ComplexPoint w, double tol) {
    return kernel_value(space, w, w, tol).value.real();
}

LogKernelNorm log_kernel_norm_sq(const SpaceHandle& space, ComplexPoint w, double relative_tol) {
    if (!(relative_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel tolerance must be positive");
    const TermPlan plan = plan_terms(space, 2.0 * w.real(), relative_tol, true);
    const double scale = *std::max_element(plan.log_mag.begin(), plan.log_mag.end());
    CompensatedSum sum;
    for (double l : plan.log_mag) sum.add(std::exp(l - scale));
    const double log_value = scale + std::log(sum.value());
    return {log_value, std::exp(plan.log_tail - log_value), plan.lambda.size()};
}

double log_kernel_prefix_sum(const SpaceHandle& space, ComplexPoint w) {
    const auto lambdas = space.frequencies().values();
    const auto log_beta = space.weights().log_values();
    std::vector<double> log_mag(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) log_mag[i] = -2.0 * log_beta[i] - 2.0 * lambdas[i] * w.real();
    const double scale = *std::max_element(log_mag.begin(), log_mag.end());
    CompensatedSum sum;
    for (double l : log_mag) sum.add(std::exp(l - scale));
    return scale + std::log(sum.value());
}

DirichletSeries kernel_section(const SpaceHandle& space, ComplexPoint w, std::size_t n_max) {
    if (n_max < 1 || n_max > space.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "section length " + std::to_string(n_max) + " outside [1, " +
                                                    std::to_string(space.size()) + "]");
    }
    std::vector<ScaledComplex> coeffs(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double lambda = space.frequencies()(n);
        coeffs[n - 1] = ScaledComplex{std::polar(1.0, lambda * w.imag()),
                                      -2.0 * space.weights().log_value(n) - lambda * w.real()};
    }
    return DirichletSeries(space.frequencies(), std::move(coeffs));
}

double evaluation_bound(const SpaceHandle& space, ComplexPoint z, double tol) {
    const KernelValue k = kernel_value(space, z, z, tol);
    return k.value.real() + k.tail_bound;
}

}  // namespace dirichlet
