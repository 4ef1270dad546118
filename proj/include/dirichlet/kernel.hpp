#pragma once

#include <cstddef>

#include "dirichlet/series.hpp"
#include "dirichlet/space.hpp"

namespace dirichlet {

inline constexpr double kDefaultKernelTolerance = 1e-12;

struct KernelValue {
    Complex value;
    double tail_bound = 0.0;
    std::size_t terms_used = 0;
};

/// log ||k_w||^2 with a tail bound relative to the partial sum.
struct LogKernelNorm {
    double log_value = 0.0;
    double relative_tail_bound = 0.0;
    std::size_t terms_used = 0;
};

/**
 * K(z, w) = sum_n beta_n^{-2} e^{-lambda_n (z + conj(w))}.
 *
 * Terms are added until the geometric-domination bound t_m r/(1 - r), with
 * r = t_{m+1}/t_m < 1, drops below `tol`. Past the stored prefix the sum
 * continues through the tail rules when both sequences have one; otherwise
 * the prefix end must already certify the tail.
 *
 * Throws TailNotCertifiable when no such stopping point exists.
 */
KernelValue kernel_value(const SpaceHandle& space, ComplexPoint z, ComplexPoint w,
                         double tol = kDefaultKernelTolerance);

/// Plain partial sum of the first `terms` kernel terms (no certification).
Complex kernel_partial_sum(const SpaceHandle& space, ComplexPoint z, ComplexPoint w, std::size_t terms);

/// ||k_w||^2 = K(w, w).
double kernel_norm_sq(const SpaceHandle& space, ComplexPoint w, double tol = kDefaultKernelTolerance);

/// ||k_w||^2 in the log domain; usable where the plain value overflows.
LogKernelNorm log_kernel_norm_sq(const SpaceHandle& space, ComplexPoint w,
                                 double relative_tol = kDefaultKernelTolerance);

/// log of the stored-prefix partial sum of ||k_w||^2; a lower bound for the full value.
double log_kernel_prefix_sum(const SpaceHandle& space, ComplexPoint w);

/**
 * Truncation of k_w to indices <= n_max, as a Dirichlet series in z with
 * coefficients beta_n^{-2} e^{-lambda_n conj(w)}. The reproducing identity
 * <f, section> = f(w) is exact for every f supported in [1, n_max].
 */
DirichletSeries kernel_section(const SpaceHandle& space, ComplexPoint w, std::size_t n_max);

/// M_z such that |f(z)|^2 <= M_z ||f||^2; the certified tail is included.
double evaluation_bound(const SpaceHandle& space, ComplexPoint z, double tol = kDefaultKernelTolerance);

}  // namespace dirichlet
