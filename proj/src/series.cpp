#include "dirichlet/series.hpp"

#include <algorithm>
#include <string>

#include "dirichlet/error.hpp"

namespace dirichlet {

namespace {

std::vector<ScaledComplex> to_scaled(std::vector<Complex> coeffs) {
    std::vector<ScaledComplex> out;
    out.reserve(coeffs.size());
    for (Complex c : coeffs) out.push_back(ScaledComplex::from(c));
    return out;
}

}  // namespace

DirichletSeries::DirichletSeries(FrequencySequence freq, std::vector<Complex> coeffs)
    : DirichletSeries(std::move(freq), to_scaled(std::move(coeffs))) {}

DirichletSeries::DirichletSeries(FrequencySequence freq, std::vector<ScaledComplex> coeffs)
    : freq_(std::move(freq)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() > freq_.size()) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(coeffs_.size()) + " coefficients for " +
                                                   std::to_string(freq_.size()) + " frequencies");
    }
    for (auto& c : coeffs_) {
        c = c.normalized();
        if (!std::isfinite(c.mantissa.real()) || !std::isfinite(c.mantissa.imag()) ||
            !std::isfinite(c.exponent)) {
            throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
        }
    }
    coeffs_.resize(freq_.size());
}

DirichletSeries DirichletSeries::zero(FrequencySequence freq) {
    return DirichletSeries(std::move(freq), std::vector<ScaledComplex>{});
}

DirichletSeries DirichletSeries::monomial(FrequencySequence freq, std::size_t n, ScaledComplex c) {
    if (n < 1 || n > freq.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "monomial index " + std::to_string(n));
    }
    std::vector<ScaledComplex> coeffs(freq.size());
    coeffs[n - 1] = c;
    return DirichletSeries(std::move(freq), std::move(coeffs));
}

const ScaledComplex& DirichletSeries::scaled(std::size_t n) const {
    if (n < 1 || n > coeffs_.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "coefficient index " + std::to_string(n));
    }
    return coeffs_[n - 1];
}

Complex DirichletSeries::coefficient(std::size_t n) const { return scaled(n).value(); }

std::vector<std::size_t> DirichletSeries::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!coeffs_[i].is_zero()) out.push_back(i + 1);
    }
    return out;
}

std::size_t DirichletSeries::max_support() const {
    for (std::size_t i = coeffs_.size(); i > 0; --i) {
        if (!coeffs_[i - 1].is_zero()) return i;
    }
    return 0;
}

Complex evaluate(const DirichletSeries& f, ComplexPoint z) {
    CompensatedComplexSum sum;
    const auto lambdas = f.frequencies().values();
    const auto coeffs = f.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        sum.add(coeffs[i].mantissa * std::exp(coeffs[i].exponent - lambdas[i] * z));
    }
    return sum.value();
}

double estimate_D(const DirichletSeries& f, std::size_t tail_start) {
    if (f.is_zero()) throw Error(ErrorCode::EmptySupport, "series has no support");
    double best = kNegInf;
    const auto lambdas = f.frequencies().values();
    const auto coeffs = f.coefficients();
    for (std::size_t n = std::max<std::size_t>(tail_start, 1); n <= coeffs.size(); ++n) {
        const ScaledComplex& a = coeffs[n - 1];
        if (a.is_zero() || lambdas[n - 1] <= 0.0) continue;
        best = std::max(best, a.log_abs() / lambdas[n - 1]);
    }
    return best;
}

void require_same_frequencies(const FrequencySequence& a, const FrequencySequence& b) {
    if (!(a == b)) throw Error(ErrorCode::FrequencyMismatch, "series use different frequency sequences");
}

DirichletSeries linear_combine(Complex c1, const DirichletSeries& f, Complex c2, const DirichletSeries& g) {
    require_same_frequencies(f.frequencies(), g.frequencies());
    std::vector<ScaledComplex> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = f.coefficients()[i] * c1 + g.coefficients()[i] * c2;
    }
    return DirichletSeries(f.frequencies(), std::move(out));
}

}  // namespace dirichlet
