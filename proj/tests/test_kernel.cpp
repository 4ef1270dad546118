#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "dirichlet/kernel.hpp"
#include "support.hpp"

using namespace dirichlet;
using Catch::Approx;
using testing::error_of;

namespace {

Complex random_point(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    Complex z;
    do {
        z = {u(rng), u(rng)};
    } while (std::abs(z) > radius);
    return z;
}

DirichletSeries random_finite(const SpaceHandle& space, std::mt19937_64& rng, std::size_t max_index) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> idx(1, max_index);
    std::vector<ScaledComplex> coeffs(space.size());
    const std::size_t count = idx(rng);
    for (std::size_t j = 0; j < count; ++j) {
        const std::size_t n = idx(rng);
        coeffs[n - 1] = ScaledComplex{Complex{u(rng), u(rng)}, -space.weights().log_value(n)};
    }
    return DirichletSeries(space.frequencies(), std::move(coeffs));
}

}  // namespace

TEST_CASE("K(0,0) for lambda_n = n, beta_n = e^{n^2}") {
    const SpaceHandle space = testing::square_space();
    long double oracle = 0.0L;
    for (int n = 12; n >= 1; --n) oracle += std::exp(-2.0L * n * n);
    const KernelValue k = kernel_value(space, 0.0, 0.0);
    // Truncation stops once the certified tail is below tolerance.
    CHECK(std::abs(k.value.real() - double(oracle)) <= k.tail_bound + 1e-16);
    CHECK(k.value.imag() == 0.0);
    CHECK(k.value.real() == Approx(0.1356708).margin(1e-7));
    CHECK(k.tail_bound <= kDefaultKernelTolerance);
    CHECK(std::abs(kernel_norm_sq(space, 0.0) - double(oracle)) <= k.tail_bound + 1e-16);
}

TEST_CASE("kernel is Hermitian") {
    const SpaceHandle space = testing::square_space();
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const Complex z = random_point(rng, 3.0);
        const Complex w = random_point(rng, 3.0);
        const Complex a = kernel_value(space, z, w).value;
        const Complex b = kernel_value(space, w, z).value;
        CHECK(std::abs(a - std::conj(b)) <= 1e-15 * std::abs(a));
    }
}

TEST_CASE("kernel far to the right keeps only the first term") {
    const SpaceHandle positive = testing::square_space();
    const KernelValue k = kernel_value(positive, Complex{25.0, 1.0}, Complex{25.0, -2.0});
    const Complex first = std::exp(-2.0 - 1.0 * Complex{50.0, 3.0});
    CHECK(std::abs(k.value - first) <= 1e-12 * std::abs(first));

    const auto log_rule = [](std::size_t n) { return double(n - 1) * double(n - 1); };
    const SpaceHandle zero = make_space(arithmetic_frequencies(64, 0.0), weights_from_log_rule(64, log_rule));
    CHECK(kernel_value(zero, Complex{40.0, 0.0}, Complex{40.0, 0.0}).value.real() == Approx(1.0).epsilon(1e-15));
    CHECK(kernel_norm_sq(zero, Complex{30.0, 5.0}) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kernel norms are positive") {
    const SpaceHandle space = testing::square_space();
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) CHECK(kernel_norm_sq(space, random_point(rng, 8.0)) > 0.0);
}

TEST_CASE("log kernel norm agrees with the plain value and handles huge norms") {
    const SpaceHandle space = testing::square_space();
    const LogKernelNorm l = log_kernel_norm_sq(space, Complex{-1.0, 2.0});
    CHECK(std::exp(l.log_value) == Approx(kernel_norm_sq(space, Complex{-1.0, 2.0})).epsilon(1e-13));
    // Re w = -50: the largest term is e^{1250} (n = 25), past the double range.
    const LogKernelNorm big = log_kernel_norm_sq(space, Complex{-50.0, 0.0});
    CHECK(std::isfinite(big.log_value));
    CHECK(big.log_value > 700.0);
    CHECK(log_kernel_prefix_sum(space, Complex{-50.0, 0.0}) <= big.log_value + 1e-12);
}

TEST_CASE("kernel_section reproduces single probes") {
    const SpaceHandle space = testing::square_space();
    for (Complex w : {Complex{0.0, 0.0}, Complex{1.0, -2.0}, Complex{-1.5, 0.5}}) {
        const Complex v = inner(space, probe(space, 2), kernel_section(space, w, 5));
        const Complex expected = std::exp(-4.0 - 2.0 * w);
        CHECK(std::abs(v - expected) <= 1e-14 * std::abs(expected));
    }
}

TEST_CASE("reproducing identity on random finite series") {
    const SpaceHandle space = testing::square_space();
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        const DirichletSeries f = random_finite(space, rng, 10);
        const Complex w = random_point(rng, 2.0);
        const Complex fw = evaluate(f, w);
        const Complex via_kernel = inner(space, f, kernel_section(space, w, 10));
        CHECK(std::abs(via_kernel - fw) <= 1e-11 * (1.0 + std::abs(fw)));
    }
}

TEST_CASE("short sections miss exactly the omitted terms") {
    const SpaceHandle space = testing::square_space();
    const DirichletSeries f(space.frequencies(), std::vector<Complex>{1.0, -0.5, 0.25, 2.0});
    const Complex w{0.3, -0.7};
    const Complex via_kernel = inner(space, f, kernel_section(space, w, 2));
    const Complex omitted = 0.25 * std::exp(-3.0 * w) + 2.0 * std::exp(-4.0 * w);
    CHECK(std::abs(evaluate(f, w) - via_kernel - omitted) < 1e-14);
}

TEST_CASE("kernel_section bounds") {
    const SpaceHandle space = testing::square_space(8);
    CHECK(error_of([&] { kernel_section(space, 0.0, 0); }) == "IndexOutOfRange");
    CHECK(error_of([&] { kernel_section(space, 0.0, 9); }) == "IndexOutOfRange");
    CHECK(error_of([&] { kernel_value(space, 0.0, 0.0, 0.0); }) == "InvalidArgument");
}

TEST_CASE("evaluation bound dominates |f(z)|^2 / ||f||^2") {
    const SpaceHandle space = testing::square_space();
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 1000; ++trial) {
        const DirichletSeries f = random_finite(space, rng, 20);
        const Complex z = random_point(rng, 3.0);
        const double M = evaluation_bound(space, z);
        CHECK(M >= kernel_norm_sq(space, z));
        const double n = norm(space, f);
        CHECK(std::norm(evaluate(f, z)) <= M * n * n * (1.0 + 1e-12));
    }
}

TEST_CASE("kernel sections saturate the evaluation bound") {
    const SpaceHandle space = testing::square_space();
    for (Complex z : {Complex{0.0, 0.0}, Complex{-2.0, 1.0}, Complex{1.0, 3.0}}) {
        const DirichletSeries k = kernel_section(space, z, space.size());
        const double n = norm(space, k);
        const double ratio = std::norm(evaluate(k, z)) / (evaluation_bound(space, z) * n * n);
        CHECK(ratio >= 0.999);
        CHECK(ratio <= 1.0 + 1e-12);
    }
}

TEST_CASE("Gram matrices of kernel values are positive semidefinite") {
    const SpaceHandle space = testing::square_space();
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 1 + int(rng() % 6);
        std::vector<Complex> pts(m);
        for (auto& p : pts) p = random_point(rng, 3.0);
        Eigen::MatrixXcd G(m, m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) G(i, j) = kernel_value(space, pts[i], pts[j]).value;
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(G, Eigen::EigenvaluesOnly);
        CHECK(solver.eigenvalues().minCoeff() >= -1e-9 * G.trace().real());
    }
}

TEST_CASE("reported tail bounds are sound") {
    const SpaceHandle space = testing::square_space(16);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const Complex z = random_point(rng, 20.0);
        const Complex w = random_point(rng, 20.0);
        const KernelValue k = kernel_value(space, z, w, 1e-6);
        const Complex longer = kernel_partial_sum(space, z, w, 2 * k.terms_used);
        CHECK(std::abs(longer - k.value) <= k.tail_bound * (1.0 + 1e-9) + 1e-13 * std::abs(k.value));
    }
}

TEST_CASE("tail rules let kernel sums run past the prefix") {
    const SpaceHandle space = testing::square_space(8);
    const KernelValue k = kernel_value(space, Complex{-20.0, 0.0}, 0.0);
    CHECK(k.terms_used > 8);
    CHECK(k.tail_bound <= kDefaultKernelTolerance);
}

TEST_CASE("prefix-only spaces report uncertifiable tails") {
    std::vector<double> logs(8);
    for (std::size_t n = 1; n <= 8; ++n) logs[n - 1] = double(n * n);
    const SpaceHandle space = make_space(make_frequencies({1, 2, 3, 4, 5, 6, 7, 8}), make_log_weights(logs));
    CHECK(error_of([&] { kernel_value(space, Complex{-100.0, 0.0}, 0.0); }) == "TailNotCertifiable");
    CHECK(error_of([&] { kernel_norm_sq(space, Complex{-100.0, 0.0}); }) == "TailNotCertifiable");
    CHECK(error_of([&] { kernel_value(space, 0.0, 0.0); }) == "none");
}
