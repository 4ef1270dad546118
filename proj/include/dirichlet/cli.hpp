#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dirichlet::cli {

/**
 * Runs one command line (program name excluded). The JSON report goes to
 * `out`, a one-line human summary and any timings to `err`.
 *
 * Exit codes: 0 success, 1 demo with failing criteria, 2 invalid input or
 * unknown command, 3 BudgetExhausted / TailNotCertifiable.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirichlet::cli
