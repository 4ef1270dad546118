#include "dirichlet/compose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dirichlet/error.hpp"
#include "dirichlet/kernel.hpp"
#include "dirichlet/parallel.hpp"

namespace dirichlet {

namespace {

// beta_1 ||k_{z0}||; falls back to the stored prefix when the tail cannot be certified.
double constant_symbol_norm(const SpaceHandle& space, Complex z0) {
    double log_kernel = 0.0;
    try {
        log_kernel = log_kernel_norm_sq(space, z0).log_value;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TailNotCertifiable) throw;
        log_kernel = log_kernel_prefix_sum(space, z0);
    }
    return std::exp(space.weights().log_value(1) + 0.5 * log_kernel);
}

struct RingEval {
    Complex w;
    Complex phi_w;
    double guide = kNegInf;
    double log_ratio = kNegInf;
    bool ok = false;
};

std::vector<Complex> square_ring(double r, std::size_t per_side) {
    std::vector<Complex> pts;
    pts.reserve(4 * per_side);
    const double step = 2.0 * r / static_cast<double>(per_side);
    for (std::size_t j = 0; j < per_side; ++j) pts.emplace_back(-r + j * step, -r);
    for (std::size_t j = 0; j < per_side; ++j) pts.emplace_back(r, -r + j * step);
    for (std::size_t j = 0; j < per_side; ++j) pts.emplace_back(r - j * step, r);
    for (std::size_t j = 0; j < per_side; ++j) pts.emplace_back(-r, r - j * step);
    return pts;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Lower bound of log(||k_{phi(w)}||^2 / ||k_w||^2): prefix sum over certified upper sum.
std::optional<double> witness_log_ratio(const SpaceHandle& space, Complex w, Complex phi_w) {
    if (!finite(phi_w)) return std::nullopt;
    try {
        const LogKernelNorm den = log_kernel_norm_sq(space, w);
        const double log_upper = den.log_value + std::log1p(den.relative_tail_bound);
        return log_kernel_prefix_sum(space, phi_w) - log_upper;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::TailNotCertifiable) return std::nullopt;
        throw;
    }
}

double guide_frequency(const SpaceHandle& space) {
    const auto& freq = space.frequencies();
    if (freq(1) > 0.0) return freq(1);
    if (freq.size() < 2) throw Error(ErrorCode::InvalidArgument, "witness search needs lambda_2");
    return freq(2);
}

Certificate kernel_witness_search(const SpaceHandle& space, const SymbolMap& phi, double B,
                                  const WitnessBudget& budget) {
    if (budget.samples_per_side < 1) throw Error(ErrorCode::InvalidArgument, "samples_per_side must be >= 1");
    const double lambda_star = guide_frequency(space);
    const double log_B = std::log(B);
    RingEval best;
    for (double r = 1.0; r <= budget.max_radius; r *= 2.0) {
        const std::vector<Complex> pts = square_ring(r, budget.samples_per_side);
        std::vector<RingEval> evals(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
            RingEval& e = evals[i];
            e.w = pts[i];
            e.phi_w = phi(e.w);
            if (!finite(e.phi_w)) return;
            e.guide = lambda_star * (e.w - e.phi_w).real();
            if (const auto lr = witness_log_ratio(space, e.w, e.phi_w)) {
                e.log_ratio = *lr;
                e.ok = true;
            }
        });
        std::vector<std::size_t> order(pts.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const RingEval& x = evals[a];
            const RingEval& y = evals[b];
            if (x.guide != y.guide) return x.guide > y.guide;
            if (x.w.real() != y.w.real()) return x.w.real() < y.w.real();
            return x.w.imag() < y.w.imag();
        });
        for (std::size_t i : order) {
            const RingEval& e = evals[i];
            if (!e.ok) continue;
            if (e.log_ratio > log_B) {
                Certificate cert;
                cert.kind = Certificate::Kind::KernelWitness;
                cert.budget_B = B;
                cert.w = e.w;
                cert.phi_w = e.phi_w;
                cert.log_ratio = e.log_ratio;
                cert.radius = r;
                return cert;
            }
            if (!best.ok || e.log_ratio > best.log_ratio) best = e;
        }
    }
    std::string detail = "no kernel witness with ratio > " + std::to_string(B) + " within radius " +
                         std::to_string(budget.max_radius);
    if (best.ok) {
        detail += "; best log ratio " + std::to_string(best.log_ratio) + " at w = (" +
                  std::to_string(best.w.real()) + ", " + std::to_string(best.w.imag()) + ")";
    }
    throw Error(ErrorCode::BudgetExhausted, detail);
}

}  // namespace

std::string_view to_string(Decision decision) {
    return decision == Decision::Bounded ? "Bounded" : "Unbounded";
}

std::string_view to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::UnitAffineNonnegShift: return "UnitAffineNonnegShift";
        case CaseTag::ConstantSymbol: return "ConstantSymbol";
        case CaseTag::UnitAffineNegativeShift: return "UnitAffineNegativeShift";
        case CaseTag::ConstantWithoutConstants: return "ConstantWithoutConstants";
        case CaseTag::NonUnitAffine: return "NonUnitAffine";
        case CaseTag::NonAffine: return "NonAffine";
    }
    return "NonAffine";
}

std::string_view to_string(Certificate::Kind kind) {
    return kind == Certificate::Kind::ProbeBlowup ? "ProbeBlowup" : "KernelWitness";
}

BoundednessVerdict classify(const SpaceHandle& space, const SymbolMap& phi) {
    BoundednessVerdict v;
    v.symbol_class = phi.symbol_class();
    const double lambda1 = space.frequencies()(1);
    const Complex b = v.symbol_class.b;
    switch (v.symbol_class.kind) {
        case SymbolKind::UnitAffine:
            if (b.real() >= 0.0) {
                v.decision = Decision::Bounded;
                v.case_tag = CaseTag::UnitAffineNonnegShift;
                v.operator_norm = std::exp(-lambda1 * b.real());
            } else {
                v.case_tag = CaseTag::UnitAffineNegativeShift;
            }
            break;
        case SymbolKind::Constant:
            if (lambda1 == 0.0) {
                v.decision = Decision::Bounded;
                v.case_tag = CaseTag::ConstantSymbol;
                v.operator_norm = constant_symbol_norm(space, b);
                v.norm_is_rank_one_closed_form = true;
            } else {
                v.case_tag = CaseTag::ConstantWithoutConstants;
            }
            break;
        case SymbolKind::OtherAffine: v.case_tag = CaseTag::NonUnitAffine; break;
        case SymbolKind::NonAffine: v.case_tag = CaseTag::NonAffine; break;
    }
    return v;
}

DirichletSeries apply_shift(const SpaceHandle& space, Complex b, const DirichletSeries& f) {
    require_same_frequencies(space.frequencies(), f.frequencies());
    const auto lambdas = f.frequencies().values();
    std::vector<ScaledComplex> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.coefficients()[i].times_exp(-lambdas[i] * b);
    return DirichletSeries(f.frequencies(), std::move(out));
}

DirichletSeries apply_constant(const SpaceHandle& space, Complex z0, const DirichletSeries& f) {
    require_same_frequencies(space.frequencies(), f.frequencies());
    const Complex value = evaluate(f, z0);
    if (value == Complex{}) return DirichletSeries::zero(space.frequencies());
    if (!space.contains_constants()) {
        throw Error(ErrorCode::ConstantNotRepresentable,
                    "f(z0) != 0 is a nonzero constant and lambda_1 = " + std::to_string(space.frequencies()(1)) +
                        " > 0");
    }
    return DirichletSeries::monomial(space.frequencies(), 1, ScaledComplex::from(value));
}

DirichletSeries apply(const SpaceHandle& space, const SymbolMap& phi, const DirichletSeries& f) {
    const SymbolClass& cls = phi.symbol_class();
    switch (cls.kind) {
        case SymbolKind::UnitAffine: return apply_shift(space, cls.b, f);
        case SymbolKind::Constant: return apply_constant(space, cls.b, f);
        default:
            throw Error(ErrorCode::InvalidArgument, "composition with " + std::string(to_string(cls.kind)) +
                                                        " symbol has no coefficient form over this frequency set");
    }
}

double operator_norm(const SpaceHandle& space, const SymbolMap& phi) {
    const BoundednessVerdict v = classify(space, phi);
    if (v.decision != Decision::Bounded) {
        throw Error(ErrorCode::UnboundedSymbol, std::string(to_string(v.case_tag)) + " symbol " + phi.to_string());
    }
    return *v.operator_norm;
}

Complex adjoint_on_kernel(const SpaceHandle&, const SymbolMap& phi, Complex w) { return phi(w); }

Certificate certify_unbounded(const SpaceHandle& space, const SymbolMap& phi, double B, const WitnessBudget& budget) {
    if (!(B > 1.0)) throw Error(ErrorCode::InvalidArgument, "budget B must exceed 1");
    const BoundednessVerdict v = classify(space, phi);
    if (v.decision == Decision::Bounded) {
        throw Error(ErrorCode::InvalidArgument, "symbol " + phi.to_string() + " induces a bounded operator");
    }
    if (v.case_tag == CaseTag::UnitAffineNegativeShift) {
        const double re_b = v.symbol_class.b.real();
        const auto& freq = space.frequencies();
        for (std::size_t k = 1; k <= freq.size(); ++k) {
            const double value = std::exp(-freq(k) * re_b);
            if (value > B) {
                Certificate cert;
                cert.kind = Certificate::Kind::ProbeBlowup;
                cert.budget_B = B;
                cert.k = k;
                cert.norm_value = value;
                return cert;
            }
        }
        throw Error(ErrorCode::BudgetExhausted, "no stored probe with ||C q_k|| > " + std::to_string(B));
    }
    return kernel_witness_search(space, phi, B, budget);
}

bool verify_certificate(const SpaceHandle& space, const SymbolMap& phi, const Certificate& cert) {
    if (!(cert.budget_B > 1.0)) return false;
    if (cert.kind == Certificate::Kind::ProbeBlowup) {
        const SymbolClass& cls = phi.symbol_class();
        if (cls.kind != SymbolKind::UnitAffine || cert.k < 1 || cert.k > space.size()) return false;
        const double value = std::exp(-space.frequencies()(cert.k) * cls.b.real());
        return value > cert.budget_B && value == cert.norm_value;
    }
    const Complex phi_w = phi(cert.w);
    const auto lr = witness_log_ratio(space, cert.w, phi_w);
    if (!lr) return false;
    return *lr > std::log(cert.budget_B) && std::abs(*lr - cert.log_ratio) <= 1e-9 * std::max(1.0, std::abs(*lr));
}

TwoTermReport verify_two_term_structure(const SpaceHandle& space, const SymbolMap& phi, const RecoveryConfig& cfg,
                                     std::size_t m, bool diagnostic) {
    const auto& freq = space.frequencies();
    if (!space.contains_constants()) throw Error(ErrorCode::InvalidArgument, "two-term check needs lambda_1 = 0");
    if (freq.size() < 2) throw Error(ErrorCode::InvalidArgument, "two-term check needs lambda_2");
    if (!diagnostic && classify(space, phi).decision != Decision::Bounded) {
        throw Error(ErrorCode::UnboundedSymbol, "symbol " + phi.to_string() + " is not bounded");
    }
    m = std::clamp<std::size_t>(m, 1, freq.size());
    const double lambda2 = freq(2);
    const Evaluator g = [&phi, lambda2](Complex z) { return std::exp(-lambda2 * phi(z)); };
    const std::vector<RecoveryResult> results = recover_all(g, freq, m, cfg);

    TwoTermReport report;
    report.two_term_structure = true;
    report.max_excess_beyond_two = kNegInf;
    for (std::size_t n = 1; n <= m; ++n) {
        report.coefficients.push_back(results[n - 1].value);
        report.error_bounds.push_back(results[n - 1].error_estimate);
        if (n > 2) {
            const double excess = std::abs(results[n - 1].value) - results[n - 1].error_estimate;
            report.max_excess_beyond_two = std::max(report.max_excess_beyond_two, excess);
            if (excess > 0.0) report.two_term_structure = false;
        }
    }
    for (int j = 0; j < 8; ++j) {
        const Complex z{cfg.sigma, static_cast<double>(j)};
        CompensatedComplexSum model;
        for (std::size_t n = 1; n <= m; ++n) model.add(report.coefficients[n - 1] * std::exp(-freq(n) * z));
        report.residual = std::max(report.residual, std::abs(g(z) - model.value()));
    }
    return report;
}

}  // namespace dirichlet
