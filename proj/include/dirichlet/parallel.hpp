#pragma once

#include <cstddef>
#include <functional>

namespace dirichlet {

/// Worker count from DIRICHLET_RKHS_THREADS (0 or 1 = sequential); defaults to the hardware count.
std::size_t worker_count();

/**
 * Runs body(i) for i in [0, count) on up to worker_count() threads using
 * static contiguous chunks. Callers write results into slot i and reduce in
 * index order afterwards, so outcomes never depend on scheduling.
 * The body must not throw.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace dirichlet
