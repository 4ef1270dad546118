#include <cmath>
#include <random>
#include <vector>

#include "dirichlet/growth.hpp"
#include "support.hpp"

using namespace dirichlet;
using Catch::Approx;
using testing::error_of;

namespace {

DirichletSeries from_log_rule(std::size_t count, double (*log_abs)(double)) {
    std::vector<ScaledComplex> coeffs(count);
    for (std::size_t n = 1; n <= count; ++n) coeffs[n - 1] = ScaledComplex::from_log(log_abs(double(n)));
    return DirichletSeries(arithmetic_frequencies(count), std::move(coeffs));
}

double neg_log_factorial(double n) { return -testing::log_factorial(n); }

}  // namespace

TEST_CASE("reciprocal factorial coefficients at n = 100") {
    const DirichletSeries f = from_log_rule(100, neg_log_factorial);
    const double lf = testing::log_factorial(100.0);

    const OrderEstimate ritt = ritt_order(f, {100, 100});
    CHECK(ritt.value == Approx(100.0 * std::log(100.0) / lf).epsilon(1e-13));
    CHECK(ritt.value == Approx(1.2661).margin(1e-4));

    const OrderEstimate lo = log_order_coeff(f, {100, 100});
    CHECK(lo.value == Approx(std::log(100.0) / std::log(lf / 100.0)).epsilon(1e-13));
    CHECK(lo.value == Approx(3.567).margin(1e-3));

    // Over a window the estimate is the largest per-index ratio.
    const OrderEstimate wide = ritt_order(f, {50, 100});
    CHECK(wide.indices.front() == 50);
    CHECK(wide.indices.back() == 100);
    CHECK(wide.per_n_ratios.back() == Approx(1.2661).margin(1e-4));
    CHECK(wide.value == Approx(50.0 * std::log(50.0) / testing::log_factorial(50.0)).epsilon(1e-13));
}

TEST_CASE("closed-form families") {
    const DirichletSeries half = from_log_rule(500, [](double n) { return -0.5 * n * std::log(n); });
    const OrderEstimate ritt = ritt_order(half, {2, 500});
    for (double r : ritt.per_n_ratios) CHECK(r == Approx(2.0).epsilon(1e-13));

    const DirichletSeries square = from_log_rule(500, [](double n) { return -n * n; });
    const OrderEstimate lo = log_order_coeff(square, {2, 500});
    for (double r : lo.per_n_ratios) CHECK(r == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("Ritt order of reciprocal factorials stays below 1.4 and decreases") {
    const DirichletSeries f = from_log_rule(2000, neg_log_factorial);
    for (std::size_t M : {100u, 500u, 2000u}) CHECK(ritt_order(f, {50, M}).value <= 1.4);
    const OrderEstimate est = ritt_order(f, {50, 2000});
    for (std::size_t i = 1; i < est.per_n_ratios.size(); ++i) CHECK(est.per_n_ratios[i] < est.per_n_ratios[i - 1]);
}

TEST_CASE("max_term examples") {
    const DirichletSeries f = from_log_rule(60, neg_log_factorial);
    // |a_{n+1}| e^{2} / |a_n| = e^2 / (n + 1) crosses 1 between n = 6 and n = 7.
    const MaxTerm mu = max_term(f, -2.0);
    CHECK(mu.index == 7);
    CHECK(mu.log_value == Approx(14.0 - testing::log_factorial(7.0)).epsilon(1e-14));
    CHECK(mu.value == Approx(std::exp(14.0) / 5040.0).epsilon(1e-13));

    const DirichletSeries tie(arithmetic_frequencies(4), std::vector<Complex>{1.0, 1.0});
    CHECK(max_term(tie, 0.0).index == 1);

    CHECK(error_of([] { max_term(DirichletSeries::zero(arithmetic_frequencies(3)), 0.0); }) == "EmptySupport");
}

TEST_CASE("max_term dominates every term") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const FrequencySequence freq = make_frequencies({0.0, 0.5, 1.7, 2.0, 3.3, 4.1, 6.0, 9.5});
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Complex> a(8);
        for (auto& x : a) x = {u(rng), u(rng)};
        const DirichletSeries f(freq, a);
        const double sigma = 10.0 * u(rng);
        const MaxTerm mu = max_term(f, sigma);
        for (std::size_t n = 1; n <= 8; ++n) {
            CHECK(mu.log_value >= std::log(std::abs(a[n - 1])) - freq(n) * sigma - 1e-12);
        }
    }
}

TEST_CASE("growth estimator errors") {
    const DirichletSeries f = from_log_rule(20, neg_log_factorial);
    CHECK(error_of([&] { ritt_order(f, {0, 5}); }) == "IndexOutOfRange");
    CHECK(error_of([&] { ritt_order(f, {5, 21}); }) == "IndexOutOfRange");
    CHECK(error_of([&] { ritt_order(f, {6, 5}); }) == "IndexOutOfRange");
    // lambda_1 = 1 is skipped, leaving nothing.
    CHECK(error_of([&] { ritt_order(f, {1, 1}); }) == "EmptyWindow");
    const DirichletSeries sparse(arithmetic_frequencies(10), std::vector<Complex>{1.0, 0.5});
    CHECK(error_of([&] { log_order_coeff(sparse, {3, 10}); }) == "EmptyWindow");

    const DirichletSeries linear = from_log_rule(20, [](double n) { return -n; });
    CHECK(error_of([&] { log_order_coeff(linear, {2, 20}); }) == "DomainViolation");

    const std::vector<double> empty;
    CHECK(error_of([&] { log_order_maxterm(f, empty); }) == "DomainViolation");
    const std::vector<double> right{-0.5};
    CHECK(error_of([&] { log_order_maxterm(f, right); }) == "DomainViolation");
    const DirichletSeries steep = from_log_rule(20, [](double n) { return -10.0 * n * n; });
    const std::vector<double> small{-2.0};
    CHECK(error_of([&] { log_order_maxterm(steep, small); }) == "DomainViolation");
}

TEST_CASE("maximal-term order near sigma = -100") {
    // log mu(-100) = max_n (100 n - n^2) = 2500.
    const DirichletSeries f = from_log_rule(2000, [](double n) { return -n * n; });
    const std::vector<double> grid{-100.0};
    const OrderEstimate est = log_order_maxterm(f, grid);
    CHECK(est.window == Window{1, 1});
    CHECK(est.value == Approx(std::log(2500.0) / std::log(100.0)).epsilon(1e-14));
    CHECK(std::abs(est.value - 2.0) <= 0.35);
}

TEST_CASE("logarithmic orders agree at scale for a_n = exp(-n^{1 + 1/rho})") {
    constexpr std::size_t N = 10000;
    const FrequencySequence freq = arithmetic_frequencies(N);
    for (double rho : {0.5, 1.0}) {
        INFO("rho = " << rho);
        const double p = 1.0 + 1.0 / rho;
        std::vector<ScaledComplex> coeffs(N);
        for (std::size_t n = 1; n <= N; ++n) coeffs[n - 1] = ScaledComplex::from_log(-std::pow(double(n), p));
        const DirichletSeries f(freq, std::move(coeffs));

        const OrderEstimate rho_c = log_order_coeff(f, {N / 2, N});
        CHECK(rho_c.value == Approx(rho).epsilon(1e-9));

        // The maximal term sits at n = (|sigma| / p)^rho; the last grid point puts it at N.
        const double sigma_end = -p * std::pow(double(N), 1.0 / rho);
        const std::vector<double> grid{sigma_end / 100.0, sigma_end / 10.0, sigma_end};
        CHECK(max_term(f, sigma_end).index == N);
        const OrderEstimate rho_star = log_order_maxterm(f, grid);
        CHECK(std::abs(rho_star.value - (rho_c.value + 1.0)) <= 0.15);
    }
}
