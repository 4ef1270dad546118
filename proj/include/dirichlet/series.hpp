#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dirichlet/frequencies.hpp"
#include "dirichlet/numeric.hpp"

namespace dirichlet {

/// z = sigma + t i.
using ComplexPoint = Complex;

/**
 * Finitely supported Dirichlet series sum_n a_n e^{-lambda_n z} over a
 * frequency prefix. One coefficient slot per stored frequency; trailing
 * zeros are implicit when fewer coefficients are supplied.
 */
class DirichletSeries {
public:
    DirichletSeries(FrequencySequence freq, std::vector<Complex> coeffs);
    DirichletSeries(FrequencySequence freq, std::vector<ScaledComplex> coeffs);

    static DirichletSeries zero(FrequencySequence freq);
    /// Single term c * e^{-lambda_n z}.
    static DirichletSeries monomial(FrequencySequence freq, std::size_t n, ScaledComplex c);

    const FrequencySequence& frequencies() const { return freq_; }
    std::size_t size() const { return coeffs_.size(); }

    /// a_n, 1-based. The plain value may under/overflow; scaled() never does.
    Complex coefficient(std::size_t n) const;
    const ScaledComplex& scaled(std::size_t n) const;
    std::span<const ScaledComplex> coefficients() const { return coeffs_; }

    std::vector<std::size_t> support() const;
    /// Largest supported index, 0 for the zero series.
    std::size_t max_support() const;
    bool is_zero() const { return max_support() == 0; }

private:
    FrequencySequence freq_;
    std::vector<ScaledComplex> coeffs_;
};

/// Sum of a_n e^{-lambda_n z} in ascending n with compensated summation.
Complex evaluate(const DirichletSeries& f, ComplexPoint z);

/**
 * Upper-envelope estimate of D = limsup log|a_n|/lambda_n over supported
 * n >= tail_start (lambda_n = 0 skipped). Returns -inf when that tail holds
 * no support.
 */
double estimate_D(const DirichletSeries& f, std::size_t tail_start);

/// c1 f + c2 g, coefficient-wise.
DirichletSeries linear_combine(Complex c1, const DirichletSeries& f, Complex c2, const DirichletSeries& g);

void require_same_frequencies(const FrequencySequence& a, const FrequencySequence& b);

}  // namespace dirichlet
