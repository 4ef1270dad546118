#include "dirichlet/recover.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dirichlet/error.hpp"
#include "dirichlet/parallel.hpp"

namespace dirichlet {

std::vector<double> RecoveryConfig::geometric_schedule(double t0, std::size_t count) {
    std::vector<double> out;
    double t = t0;
    for (std::size_t j = 0; j < count; ++j, t *= 2.0) out.push_back(t);
    return out;
}

void RecoveryConfig::validate() const {
    if (t_schedule.empty()) throw Error(ErrorCode::InvalidArgument, "t schedule is empty");
    for (std::size_t j = 0; j < t_schedule.size(); ++j) {
        if (!(t_schedule[j] > 0.0) || !std::isfinite(t_schedule[j])) {
            throw Error(ErrorCode::InvalidArgument, "t schedule entries must be positive");
        }
        if (j > 0 && !(t_schedule[j] > t_schedule[j - 1])) {
            throw Error(ErrorCode::InvalidArgument, "t schedule must be strictly increasing");
        }
    }
    if (quad_points < 8) throw Error(ErrorCode::InvalidArgument, "quad_points must be at least 8");
    if (!std::isfinite(sigma)) throw Error(ErrorCode::InvalidArgument, "sigma must be finite");
}

Complex segment_average(const Evaluator& f, double lambda, double sigma, double t, int quad_points) {
    const double per_unit = quad_points * (1.0 + std::abs(lambda) + std::abs(sigma));
    auto intervals = static_cast<std::size_t>(std::ceil(2.0 * t * per_unit));
    intervals += intervals % 2;
    intervals = std::max<std::size_t>(intervals, 2);
    const double h = 2.0 * t / static_cast<double>(intervals);

    CompensatedComplexSum ends;
    CompensatedComplexSum odd;
    CompensatedComplexSum even;
    for (std::size_t j = 0; j <= intervals; ++j) {
        const double s = -t + static_cast<double>(j) * h;
        const Complex z{sigma, s};
        const Complex value = f(z) * std::exp(lambda * z);
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw Error(ErrorCode::QuadratureDiverged, "non-finite integrand at s = " + std::to_string(s));
        }
        if (j == 0 || j == intervals) {
            ends.add(value);
        } else if (j % 2 == 1) {
            odd.add(value);
        } else {
            even.add(value);
        }
    }
    const Complex integral = (h / 3.0) * (ends.value() + 4.0 * odd.value() + 2.0 * even.value());
    return integral / (2.0 * t);
}

RecoveryResult recover_frequency(const Evaluator& f, double lambda, const RecoveryConfig& cfg,
                                 const std::optional<CoefficientModel>& model) {
    cfg.validate();
    RecoveryResult out;
    out.per_t.reserve(cfg.t_schedule.size());
    for (double t : cfg.t_schedule) out.per_t.push_back(segment_average(f, lambda, cfg.sigma, t, cfg.quad_points));

    if (cfg.average) {
        CompensatedComplexSum sum;
        for (Complex v : out.per_t) sum.add(v);
        out.value = sum.value() / static_cast<double>(out.per_t.size());
    } else {
        out.value = out.per_t.back();
    }

    if (model) {
        const double t_min = cfg.t_schedule.front();
        CompensatedSum bound;
        for (std::size_t k = 0; k < model->lambdas.size() && k < model->coefficients.size(); ++k) {
            const double mu = lambda - model->lambdas[k];
            if (mu == 0.0) continue;
            bound.add(std::abs(model->coefficients[k]) * std::exp(mu * cfg.sigma) / (std::abs(mu) * t_min));
        }
        out.error_estimate = bound.value();
        out.model_based = true;
    } else if (out.per_t.size() < 2) {
        out.error_estimate = kInf;
    } else {
        double spread = 0.0;
        for (Complex v : out.per_t) spread = std::max(spread, std::abs(v - out.value));
        out.error_estimate = spread;
    }
    return out;
}

RecoveryResult recover_coefficient(const Evaluator& f, const FrequencySequence& freq, std::size_t n,
                                   const RecoveryConfig& cfg, std::span<const Complex> approx) {
    const double lambda = freq(n);
    if (approx.empty()) return recover_frequency(f, lambda, cfg);
    if (approx.size() > freq.size()) {
        throw Error(ErrorCode::LengthMismatch, "more approximate coefficients than frequencies");
    }
    return recover_frequency(f, lambda, cfg, CoefficientModel{freq.values().first(approx.size()), approx});
}

std::vector<RecoveryResult> recover_all(const Evaluator& f, const FrequencySequence& freq, std::size_t m,
                                        const RecoveryConfig& cfg) {
    if (m < 1 || m > freq.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "recovery range " + std::to_string(m));
    }
    cfg.validate();
    std::vector<RecoveryResult> results(m);
    std::vector<std::string> failures(m);
    parallel_for(m, [&](std::size_t i) {
        try {
            results[i] = recover_frequency(f, freq(i + 1), cfg);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (const auto& msg : failures) {
        if (!msg.empty()) throw Error(ErrorCode::QuadratureDiverged, msg);
    }

    std::vector<Complex> approx(m);
    for (std::size_t i = 0; i < m; ++i) approx[i] = results[i].value;
    const CoefficientModel model{freq.values().first(m), approx};
    const double t_min = cfg.t_schedule.front();
    for (std::size_t i = 0; i < m; ++i) {
        const double lambda = freq(i + 1);
        CompensatedSum bound;
        for (std::size_t k = 0; k < m; ++k) {
            const double mu = lambda - model.lambdas[k];
            if (k == i || mu == 0.0) continue;
            bound.add(std::abs(model.coefficients[k]) * std::exp(mu * cfg.sigma) / (std::abs(mu) * t_min));
        }
        results[i].error_estimate = bound.value();
        results[i].model_based = true;
    }
    return results;
}

ConvergenceProbe recovery_convergence_probe(const Evaluator& f, double lambda, double sigma,
                                            std::span<const double> t_list, std::optional<Complex> truth,
                                            int quad_points) {
    if (t_list.empty()) throw Error(ErrorCode::InvalidArgument, "t list is empty");
    ConvergenceProbe out;
    double t_max = 0.0;
    for (double t : t_list) {
        if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "t must be positive");
        out.rows.push_back({t, segment_average(f, lambda, sigma, t, quad_points), 0.0});
        t_max = std::max(t_max, t);
    }
    if (truth) {
        out.reference = *truth;
    } else {
        for (const auto& row : out.rows) {
            if (row.t == t_max) out.reference = row.value;
        }
    }
    std::vector<double> log_t;
    std::vector<double> log_err;
    for (auto& row : out.rows) {
        row.abs_error = std::abs(row.value - out.reference);
        if (row.abs_error > 0.0) {
            log_t.push_back(std::log(row.t));
            log_err.push_back(std::log(row.abs_error));
        }
    }
    out.slope = least_squares_slope(log_t, log_err);
    return out;
}

}  // namespace dirichlet
