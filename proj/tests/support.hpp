#pragma once

#include <cmath>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "dirichlet/error.hpp"
#include "dirichlet/frequencies.hpp"
#include "dirichlet/space.hpp"

namespace testing {

/// Name of the ErrorCode thrown by `body`, or "none".
template <class F>
std::string error_of(F&& body) {
    try {
        body();
    } catch (const dirichlet::Error& e) {
        return std::string(dirichlet::to_string(e.code()));
    }
    return "none";
}

/// lambda_n = first + (n - 1), beta_n = e^{n^2}.
inline dirichlet::SpaceHandle square_space(std::size_t count = 64, double first = 1.0) {
    return dirichlet::make_space(
        dirichlet::arithmetic_frequencies(count, first, 1.0),
        dirichlet::weights_from_log_rule(count, [](std::size_t n) { return double(n) * double(n); }));
}

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

}  // namespace testing
