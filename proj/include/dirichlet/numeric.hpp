#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>

namespace dirichlet {

using Complex = std::complex<double>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/**
 * Neumaier-compensated accumulator. Terms are added in call order, so the
 * result is deterministic for a fixed summation order.
 */
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(Complex z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/**
 * A complex number with an extended exponent: value = mantissa * exp(exponent).
 *
 * Coefficients like 1/beta_n with beta_n = e^{n^2} leave the double range for
 * modest n; keeping the magnitude in the exponent lets norms, inner products
 * and kernel sections stay exact on such weights.
 */
struct ScaledComplex {
    Complex mantissa{};
    double exponent = 0.0;

    static ScaledComplex from(Complex c) { return ScaledComplex{c, 0.0}.normalized(); }

    /// |value| = exp(log_abs), arg(value) = phase.
    static ScaledComplex from_log(double log_abs, double phase = 0.0) {
        if (log_abs == kNegInf) return {};
        return {std::polar(1.0, phase), log_abs};
    }

    bool is_zero() const { return mantissa == Complex{}; }

    double log_abs() const {
        if (is_zero()) return kNegInf;
        return std::log(std::abs(mantissa)) + exponent;
    }

    Complex value() const {
        if (is_zero()) return {};
        if (exponent == 0.0) return mantissa;
        return mantissa * std::exp(exponent);
    }

    /// Multiplies by exp(s) for complex s.
    ScaledComplex times_exp(Complex s) const {
        if (is_zero()) return {};
        const Complex rot = s.imag() == 0.0 ? Complex{1.0, 0.0} : std::polar(1.0, s.imag());
        return {mantissa * rot, exponent + s.real()};
    }

    ScaledComplex operator*(Complex c) const { return ScaledComplex{mantissa * c, exponent}.normalized(); }

    ScaledComplex conj() const { return {std::conj(mantissa), exponent}; }

    friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.exponent == b.exponent) return ScaledComplex{a.mantissa + b.mantissa, a.exponent}.normalized();
        const double e = std::max(a.exponent, b.exponent);
        return ScaledComplex{a.mantissa * std::exp(a.exponent - e) + b.mantissa * std::exp(b.exponent - e), e}
            .normalized();
    }

    /// Moves the magnitude of an extreme mantissa into the exponent.
    ScaledComplex normalized() const {
        const double m = std::abs(mantissa);
        if (m == 0.0 || (m >= 1e-100 && m <= 1e100) || !std::isfinite(m)) return *this;
        return {mantissa / m, exponent + std::log(m)};
    }
};

/// Least-squares slope of y against x; 0 when fewer than two points.
inline double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) return 0.0;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace dirichlet
