#include <atomic>
#include <cstdlib>
#include <vector>

#include "dirichlet/parallel.hpp"
#include "support.hpp"

using namespace dirichlet;

namespace {

struct ThreadsEnv {
    explicit ThreadsEnv(const char* value) { setenv("DIRICHLET_RKHS_THREADS", value, 1); }
    ~ThreadsEnv() { unsetenv("DIRICHLET_RKHS_THREADS"); }
};

}  // namespace

TEST_CASE("worker_count reads the environment") {
    {
        ThreadsEnv env("3");
        CHECK(worker_count() == 3);
    }
    {
        ThreadsEnv env("0");
        CHECK(worker_count() == 0);
    }
    {
        ThreadsEnv env("many");
        CHECK(worker_count() == 1);
    }
    CHECK(worker_count() >= 1);
}

TEST_CASE("parallel_for visits every index exactly once") {
    for (const char* threads : {"0", "1", "2", "4", "7"}) {
        ThreadsEnv env(threads);
        for (std::size_t count : {0u, 1u, 5u, 1000u}) {
            std::vector<std::atomic<int>> hits(count);
            parallel_for(count, [&](std::size_t i) { hits[i].fetch_add(1); });
            for (std::size_t i = 0; i < count; ++i) CHECK(hits[i].load() == 1);
        }
    }
}

TEST_CASE("slot results reduce to the same value for any worker count") {
    std::vector<double> reference;
    for (const char* threads : {"1", "3", "8"}) {
        ThreadsEnv env(threads);
        std::vector<double> slots(257);
        parallel_for(slots.size(), [&](std::size_t i) { slots[i] = 1.0 / double(i + 1); });
        if (reference.empty()) reference = slots;
        CHECK(slots == reference);
    }
}
