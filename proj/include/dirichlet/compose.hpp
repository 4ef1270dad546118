#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "dirichlet/recover.hpp"
#include "dirichlet/series.hpp"
#include "dirichlet/space.hpp"
#include "dirichlet/symbol.hpp"

namespace dirichlet {

enum class Decision { Bounded, Unbounded };

enum class CaseTag {
    UnitAffineNonnegShift,     // z + b, Re b >= 0
    ConstantSymbol,            // constant, lambda_1 = 0
    UnitAffineNegativeShift,   // z + b, Re b < 0
    ConstantWithoutConstants,  // constant, lambda_1 > 0
    NonUnitAffine,             // a z + b, a != 0, 1
    NonAffine,
};

std::string_view to_string(Decision decision);
std::string_view to_string(CaseTag tag);

struct Certificate {
    enum class Kind { ProbeBlowup, KernelWitness };

    Kind kind = Kind::ProbeBlowup;
    double budget_B = 0.0;

    // ProbeBlowup: ||C q_k|| = e^{-lambda_k Re b} > B.
    std::size_t k = 0;
    double norm_value = 0.0;

    // KernelWitness: ||k_{phi(w)}||^2 / ||k_w||^2 > B, with the prefix sum
    // as lower bound in the numerator and the certified sum in the denominator.
    Complex w;
    Complex phi_w;
    double log_ratio = 0.0;
    double radius = 0.0;
};

std::string_view to_string(Certificate::Kind kind);

struct BoundednessVerdict {
    Decision decision = Decision::Unbounded;
    CaseTag case_tag = CaseTag::NonAffine;
    SymbolClass symbol_class;
    std::optional<double> operator_norm;
    /// Set for constant symbols: the norm is the closed form of the rank-one map f -> f(z0).
    bool norm_is_rank_one_closed_form = false;
    std::optional<Certificate> certificate;
};

/**
 * Boundedness of C_phi on the space. With lambda_1 > 0 exactly the shifts
 * z + b with Re b >= 0 are bounded, with norm e^{-lambda_1 Re b}; with
 * lambda_1 = 0 constants are bounded as well. The decision depends only on
 * the symbol class and on whether lambda_1 is zero, never on the weights.
 */
BoundednessVerdict classify(const SpaceHandle& space, const SymbolMap& phi);

/// C_phi f for phi = z + b: coefficients a_n e^{-lambda_n b}. Defined for every b.
DirichletSeries apply_shift(const SpaceHandle& space, Complex b, const DirichletSeries& f);

/// C_phi f for phi = z0: the constant f(z0), representable only if lambda_1 = 0 or f(z0) = 0.
DirichletSeries apply_constant(const SpaceHandle& space, Complex z0, const DirichletSeries& f);

/// Dispatches on the symbol class; other classes leave the frequency set and are rejected.
DirichletSeries apply(const SpaceHandle& space, const SymbolMap& phi, const DirichletSeries& f);

/// Throws UnboundedSymbol when classify() says Unbounded.
double operator_norm(const SpaceHandle& space, const SymbolMap& phi);

/// C_phi^* k_w = k_{phi(w)}: returns the point phi(w).
Complex adjoint_on_kernel(const SpaceHandle& space, const SymbolMap& phi, Complex w);

struct WitnessBudget {
    double max_radius = 64.0;
    std::size_t samples_per_side = 64;
};

inline constexpr double kDefaultBudgetB = std::numbers::e;

/**
 * Searches for evidence that C_phi is unbounded.
 *
 * Shifts with Re b < 0 yield the smallest stored probe index whose image
 * norm exceeds B. Everything else is searched on square rings of radius
 * 1, 2, 4, ... up to max_radius; ring points are visited in descending order
 * of lambda* Re(psi(w)) (lambda* = lambda_1, or lambda_2 when lambda_1 = 0),
 * ties by (Re w, Im w), and the first point whose kernel-norm ratio exceeds
 * B is returned. Ring evaluation may run in parallel; the result does not
 * depend on it.
 *
 * Throws BudgetExhausted when nothing exceeds B within the budget.
 */
Certificate certify_unbounded(const SpaceHandle& space, const SymbolMap& phi, double B = kDefaultBudgetB,
                              const WitnessBudget& budget = {});

/// Recomputes a certificate from its fields.
bool verify_certificate(const SpaceHandle& space, const SymbolMap& phi, const Certificate& cert);

struct TwoTermReport {
    std::vector<Complex> coefficients;
    std::vector<double> error_bounds;
    /// max over n > 2 of |c_n| - bound_n.
    double max_excess_beyond_two = 0.0;
    /// |c_n| <= bound_n for every n > 2.
    bool two_term_structure = false;
    /// max over sample points of |g(z) - sum_n c_n e^{-lambda_n z}| on the line Re z = sigma.
    double residual = 0.0;
};

/**
 * Recovers the coefficients of g(z) = e^{-lambda_2 phi(z)} at lambda_1..lambda_m
 * and checks that only the first two can be nonzero. Requires lambda_1 = 0;
 * unless `diagnostic`, phi must also be bounded.
 */
TwoTermReport verify_two_term_structure(const SpaceHandle& space, const SymbolMap& phi, const RecoveryConfig& cfg,
                                     std::size_t m, bool diagnostic = false);

}  // namespace dirichlet
