#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "dirichlet/recover.hpp"
#include "support.hpp"

using namespace dirichlet;
using Catch::Approx;
using testing::error_of;

namespace {

Evaluator exponential_sum(std::vector<double> lambdas, std::vector<Complex> coeffs) {
    return [lambdas = std::move(lambdas), coeffs = std::move(coeffs)](Complex z) {
        Complex total;
        for (std::size_t k = 0; k < lambdas.size(); ++k) total += coeffs[k] * std::exp(-lambdas[k] * z);
        return total;
    };
}

}  // namespace

TEST_CASE("recovery of a two-term sum") {
    const std::vector<double> lambdas{1.0, 2.0};
    const std::vector<Complex> coeffs{3.0, 2.0};
    const Evaluator f = exponential_sum(lambdas, coeffs);
    const RecoveryConfig cfg;
    const RecoveryResult a1 = recover_frequency(f, 1.0, cfg);
    const RecoveryResult a2 = recover_frequency(f, 2.0, cfg);
    CHECK(std::abs(a1.value - 3.0) < 0.02);
    CHECK(std::abs(a2.value - 2.0) < 0.03);
    CHECK(a1.per_t.size() == cfg.t_schedule.size());
    CHECK_FALSE(a1.model_based);

    // The remainder model bounds the actual error.
    const CoefficientModel model{lambdas, coeffs};
    const RecoveryResult modelled = recover_frequency(f, 1.0, cfg, model);
    CHECK(modelled.model_based);
    CHECK(std::abs(modelled.value - 3.0) <= modelled.error_estimate);
    CHECK(modelled.error_estimate == Approx(2.0 / 100.0));
}

TEST_CASE("recovering an absent frequency gives nearly zero") {
    const Evaluator f = exponential_sum({2.0}, {1.0});
    const RecoveryResult r = recover_frequency(f, 1.0, RecoveryConfig{});
    CHECK(std::abs(r.value) < 0.01);
    // A frequency between stored ones is also absent.
    CHECK(std::abs(recover_frequency(exponential_sum({1.0, 2.0}, {1.0, 1.0}), 1.5, RecoveryConfig{}).value) < 0.03);
}

TEST_CASE("single segments give the exact segment average") {
    // (1/2t) int_{-t}^{t} e^{i mu s} ds = sin(mu t) / (mu t).
    const Evaluator f = exponential_sum({0.5}, {1.0});
    for (double t : {3.0, 10.0, 37.5}) {
        const Complex v = segment_average(f, 2.0, 0.0, t, 16);
        CHECK(std::abs(v - std::sin(1.5 * t) / (1.5 * t)) < 1e-8);
    }
}

TEST_CASE("recovery is linear") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RecoveryConfig cfg;
    cfg.t_schedule = RecoveryConfig::geometric_schedule(20.0, 3);
    for (int trial = 0; trial < 10; ++trial) {
        const Evaluator f = exponential_sum({0.0, 1.0, 2.0}, {Complex{u(rng), u(rng)}, u(rng), u(rng)});
        const Evaluator g = exponential_sum({0.5, 1.0, 3.0}, {u(rng), Complex{u(rng), u(rng)}, u(rng)});
        const Complex c1{u(rng), u(rng)};
        const Complex c2{u(rng), u(rng)};
        const Evaluator h = [&](Complex z) { return c1 * f(z) + c2 * g(z); };
        const Complex lhs = recover_frequency(h, 1.0, cfg).value;
        const Complex rhs = c1 * recover_frequency(f, 1.0, cfg).value + c2 * recover_frequency(g, 1.0, cfg).value;
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("single-segment error decays like 1/t") {
    // At t = (pi/2 + 2 pi k) / 1.5 the contamination from lambda = 2.5 is exactly 1 / (1.5 t).
    const Evaluator f = exponential_sum({1.0, 2.5}, {1.0, 1.0});
    std::vector<double> ts;
    for (int k : {5, 10, 20, 40, 80}) ts.push_back((std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * k) / 1.5);
    const ConvergenceProbe probe = recovery_convergence_probe(f, 1.0, 0.0, ts, Complex{1.0, 0.0});
    REQUIRE(probe.rows.size() == ts.size());
    for (const auto& row : probe.rows) CHECK(row.abs_error == Approx(1.0 / (1.5 * row.t)).epsilon(1e-6));
    CHECK(probe.slope == Approx(-1.0).margin(1e-4));

    // Without a reference the largest t serves as one.
    const ConvergenceProbe self = recovery_convergence_probe(f, 1.0, 0.0, ts);
    CHECK(self.reference == self.rows.back().value);
    CHECK(self.rows.back().abs_error == 0.0);
}

TEST_CASE("the vertical line can move") {
    const Evaluator f = exponential_sum({0.0, 1.0, 2.0}, {0.5, Complex{1.0, -1.0}, 4.0});
    for (double sigma : {-1.0, 0.0, 1.0, 2.0}) {
        RecoveryConfig cfg;
        cfg.sigma = sigma;
        INFO("sigma = " << sigma);
        CHECK(std::abs(recover_frequency(f, 1.0, cfg).value - Complex{1.0, -1.0}) < 0.1);
    }
}

TEST_CASE("recover_all estimates every coefficient with a model error") {
    const FrequencySequence freq = arithmetic_frequencies(6, 0.0);
    const std::vector<Complex> truth{1.0, -2.0, 0.5, 0.0};
    const Evaluator f = exponential_sum({0.0, 1.0, 2.0, 3.0}, truth);
    RecoveryConfig cfg;
    cfg.t_schedule = RecoveryConfig::geometric_schedule(50.0, 3);
    const std::vector<RecoveryResult> all = recover_all(f, freq, 4, cfg);
    REQUIRE(all.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(all[i].model_based);
        CHECK(std::abs(all[i].value - truth[i]) <= 1.5 * all[i].error_estimate + 1e-12);
    }
    const RecoveryResult one = recover_coefficient(f, freq, 2, cfg, truth);
    CHECK(one.model_based);
    CHECK(std::abs(one.value + 2.0) <= one.error_estimate);
}

TEST_CASE("recovery errors") {
    const Evaluator overflow = exponential_sum({1000.0}, {1.0});
    RecoveryConfig left;
    left.sigma = -1.0;
    CHECK(error_of([&] { recover_frequency(overflow, 0.0, left); }) == "QuadratureDiverged");
    const Evaluator nan_box = [](Complex) { return Complex{std::numeric_limits<double>::quiet_NaN(), 0.0}; };
    CHECK(error_of([&] { recover_frequency(nan_box, 1.0, RecoveryConfig{}); }) == "QuadratureDiverged");

    const FrequencySequence freq = arithmetic_frequencies(4);
    CHECK(error_of([&] { recover_all(nan_box, freq, 2, RecoveryConfig{}); }) == "QuadratureDiverged");
    CHECK(error_of([&] { recover_all(overflow, freq, 0, RecoveryConfig{}); }) == "IndexOutOfRange");
    CHECK(error_of([&] { recover_all(overflow, freq, 5, RecoveryConfig{}); }) == "IndexOutOfRange");
    const std::vector<Complex> too_many(5);
    CHECK(error_of([&] { recover_coefficient(overflow, freq, 1, RecoveryConfig{}, too_many); }) == "LengthMismatch");

    const RecoveryConfig single{0.0, {100.0}, 16, true};
    CHECK(std::isinf(recover_frequency(exponential_sum({1.0}, {1.0}), 1.0, single).error_estimate));
}

TEST_CASE("configuration validation") {
    const Evaluator f = exponential_sum({1.0}, {1.0});
    const auto code = [&](RecoveryConfig cfg) { return error_of([&] { recover_frequency(f, 1.0, cfg); }); };
    RecoveryConfig cfg;
    CHECK(code(cfg) == "none");
    cfg.t_schedule = {};
    CHECK(code(cfg) == "InvalidArgument");
    cfg.t_schedule = {10.0, 10.0};
    CHECK(code(cfg) == "InvalidArgument");
    cfg.t_schedule = {-1.0, 10.0};
    CHECK(code(cfg) == "InvalidArgument");
    cfg.t_schedule = {10.0, 20.0};
    cfg.quad_points = 4;
    CHECK(code(cfg) == "InvalidArgument");
    cfg.quad_points = 16;
    cfg.sigma = std::numeric_limits<double>::infinity();
    CHECK(code(cfg) == "InvalidArgument");
    CHECK(RecoveryConfig::geometric_schedule(5.0, 3) == std::vector<double>{5.0, 10.0, 20.0});
}
