#include "dirichlet/growth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dirichlet/error.hpp"

namespace dirichlet {

namespace {

void check_window(const DirichletSeries& f, Window window) {
    if (window.first < 1 || window.last > f.size() || window.first > window.last) {
        throw Error(ErrorCode::IndexOutOfRange, "window [" + std::to_string(window.first) + ", " +
                                                    std::to_string(window.last) + "] outside [1, " +
                                                    std::to_string(f.size()) + "]");
    }
}

OrderEstimate finish(OrderEstimate est, const char* what) {
    if (est.per_n_ratios.empty()) throw Error(ErrorCode::EmptyWindow, std::string("no usable terms for ") + what);
    est.value = *std::max_element(est.per_n_ratios.begin(), est.per_n_ratios.end());
    return est;
}

}  // namespace

OrderEstimate ritt_order(const DirichletSeries& f, Window window) {
    check_window(f, window);
    OrderEstimate est;
    est.window = window;
    for (std::size_t n = window.first; n <= window.last; ++n) {
        const double lambda = f.frequencies()(n);
        const double neg_log_a = -f.scaled(n).log_abs();
        if (lambda <= 1.0 || !(neg_log_a > 0.0) || !std::isfinite(neg_log_a)) continue;
        est.indices.push_back(n);
        est.per_n_ratios.push_back(lambda * std::log(lambda) / neg_log_a);
    }
    return finish(std::move(est), "the Ritt order");
}

OrderEstimate log_order_coeff(const DirichletSeries& f, Window window) {
    check_window(f, window);
    OrderEstimate est;
    est.window = window;
    for (std::size_t n = window.first; n <= window.last; ++n) {
        const double lambda = f.frequencies()(n);
        const double neg_log_a = -f.scaled(n).log_abs();
        if (lambda <= 1.0 || !std::isfinite(neg_log_a)) continue;
        const double inner = neg_log_a / lambda;
        if (!(inner > 1.0)) {
            throw Error(ErrorCode::DomainViolation,
                        "log(1/|a_n|)/lambda_n = " + std::to_string(inner) + " <= 1 at n = " + std::to_string(n));
        }
        est.indices.push_back(n);
        est.per_n_ratios.push_back(std::log(lambda) / std::log(inner));
    }
    return finish(std::move(est), "the logarithmic order");
}

MaxTerm max_term(const DirichletSeries& f, double sigma) {
    MaxTerm best;
    for (std::size_t n = 1; n <= f.size(); ++n) {
        const ScaledComplex& a = f.scaled(n);
        if (a.is_zero()) continue;
        const double l = a.log_abs() - f.frequencies()(n) * sigma;
        if (best.index == 0 || l > best.log_value) {
            best.log_value = l;
            best.index = n;
        }
    }
    if (best.index == 0) throw Error(ErrorCode::EmptySupport, "maximal term of the zero series");
    best.value = std::exp(best.log_value);
    return best;
}

OrderEstimate log_order_maxterm(const DirichletSeries& f, std::span<const double> sigma_grid) {
    if (sigma_grid.empty()) throw Error(ErrorCode::DomainViolation, "empty sigma grid");
    OrderEstimate est;
    est.window = {1, sigma_grid.size()};
    for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
        const double sigma = sigma_grid[i];
        if (!(sigma < -1.0)) {
            throw Error(ErrorCode::DomainViolation, "sigma = " + std::to_string(sigma) + " is not below -1");
        }
        const MaxTerm mu = max_term(f, sigma);
        if (!(mu.log_value > 1.0)) {
            throw Error(ErrorCode::DomainViolation, "mu(sigma) <= e at sigma = " + std::to_string(sigma));
        }
        est.indices.push_back(i + 1);
        est.per_n_ratios.push_back(std::log(mu.log_value) / std::log(-sigma));
    }
    est.value = *std::max_element(est.per_n_ratios.begin(), est.per_n_ratios.end());
    return est;
}

}  // namespace dirichlet
