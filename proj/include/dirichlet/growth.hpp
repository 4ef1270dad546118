#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dirichlet/frequencies.hpp"
#include "dirichlet/series.hpp"

namespace dirichlet {

/**
 * Finite-scale limsup estimate: the maximum of the per-index ratios over the
 * window actually used. `indices[i]` is the series index (or sigma-grid
 * position) that produced `per_n_ratios[i]`.
 */
struct OrderEstimate {
    double value = 0.0;
    Window window;
    std::vector<std::size_t> indices;
    std::vector<double> per_n_ratios;
};

/// max over the window of lambda_n log(lambda_n) / log(1/|a_n|); zero terms and lambda_n <= 1 are skipped.
OrderEstimate ritt_order(const DirichletSeries& f, Window window);

/// max over the window of log(lambda_n) / log(log(1/|a_n|) / lambda_n).
OrderEstimate log_order_coeff(const DirichletSeries& f, Window window);

struct MaxTerm {
    double log_value = kNegInf;
    double value = 0.0;
    std::size_t index = 0;
};

/// mu(sigma) = max_n |a_n| e^{-lambda_n sigma}, smallest index on ties.
MaxTerm max_term(const DirichletSeries& f, double sigma);

/// max over the grid of log(log mu(sigma)) / log(-sigma); needs sigma < -1 and mu(sigma) > e.
OrderEstimate log_order_maxterm(const DirichletSeries& f, std::span<const double> sigma_grid);

}  // namespace dirichlet
