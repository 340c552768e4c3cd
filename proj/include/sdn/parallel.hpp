#pragma once

// Parallelism context threaded through every kernel. Kernels never consult
// global state for their thread count.

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sdn {

struct ExecContext {
    int threads = 1;

    static ExecContext serial() { return ExecContext{1}; }

    static ExecContext hardware() {
#ifdef _OPENMP
        return ExecContext{std::max(1, omp_get_num_procs())};
#else
        return ExecContext{1};
#endif
    }
};

inline int current_thread() {
#ifdef _OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

// Budgets for the exhaustive paths. Defaults follow the documented desk-scale limits.
struct Budgets {
    std::uint64_t vectors = 43046721;          // 3^16 candidate vectors per scan
    std::uint64_t vertices = 1000000;          // graph vertices
    std::uint64_t tuples = std::uint64_t{1} << 34;  // codeword tuples for enumerators
    std::uint64_t codewords = std::uint64_t{1} << 26;  // single-code codeword scans
    std::uint64_t pairs = 500000000;           // vertex pairs for codimension checks
};

}  // namespace sdn
