#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dirichlet/frequencies.hpp"
#include "dirichlet/numeric.hpp"

namespace dirichlet {

/// Black-box entire function z -> f(z).
using Evaluator = std::function<Complex(Complex)>;

struct RecoveryConfig {
    double sigma = 0.0;
    std::vector<double> t_schedule = geometric_schedule(100.0, 4);
    int quad_points = 16;
    bool average = true;

    /// {t0, 2 t0, 4 t0, ...} with `count` entries.
    static std::vector<double> geometric_schedule(double t0, std::size_t count);

    void validate() const;
};

struct RecoveryResult {
    Complex value;
    double error_estimate = 0.0;
    /// One segment average per schedule entry.
    std::vector<Complex> per_t;
    /// True when error_estimate comes from the remainder model with
    /// approximate coefficients; false when it is the spread over the schedule.
    bool model_based = false;
};

/// Known or approximate coefficients a_k at frequencies lambda_k, used to bound contamination.
struct CoefficientModel {
    std::span<const double> lambdas;
    std::span<const Complex> coefficients;
};

/**
 * (1/2t) * integral_{-t}^{t} f(sigma + i s) e^{lambda (sigma + i s)} ds by
 * composite Simpson with quad_points * (1 + lambda + |sigma|) nodes per unit.
 */
Complex segment_average(const Evaluator& f, double lambda, double sigma, double t, int quad_points);

/**
 * Estimates the coefficient of e^{-lambda z} in f from vertical-segment
 * averages over the schedule (Cesaro mean when cfg.average, else the
 * largest t).
 *
 * With a model, the error estimate is sum_{lambda_k != lambda}
 * |a_k| e^{mu_k sigma} / (|mu_k| t_min), mu_k = lambda - lambda_k: the
 * envelope of the sin(mu t)/(mu t) remainder. Without one it is the spread of
 * the per-t values (infinite for a single-entry schedule).
 */
RecoveryResult recover_frequency(const Evaluator& f, double lambda, const RecoveryConfig& cfg,
                                 const std::optional<CoefficientModel>& model = std::nullopt);

/// Coefficient a_n for the frequency lambda_n of `freq`.
RecoveryResult recover_coefficient(const Evaluator& f, const FrequencySequence& freq, std::size_t n,
                                   const RecoveryConfig& cfg, std::span<const Complex> approx = {});

/// Recovers a_1..a_m, then re-estimates each error from the recovered coefficients.
std::vector<RecoveryResult> recover_all(const Evaluator& f, const FrequencySequence& freq, std::size_t m,
                                        const RecoveryConfig& cfg);

struct ConvergenceRow {
    double t = 0.0;
    Complex value;
    double abs_error = 0.0;
};

struct ConvergenceProbe {
    Complex reference;
    std::vector<ConvergenceRow> rows;
    /// Least-squares slope of log|error| against log t over rows with nonzero error.
    double slope = 0.0;
};

/**
 * Single-segment recoveries at each t (no averaging), compared with `truth`
 * or, when absent, with the value at the largest t.
 */
ConvergenceProbe recovery_convergence_probe(const Evaluator& f, double lambda, double sigma,
                                            std::span<const double> t_list,
                                            std::optional<Complex> truth = std::nullopt, int quad_points = 16);

}  // namespace dirichlet
