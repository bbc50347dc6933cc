#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rwre {

// Runs f(i) for i in [0, n). workers <= 1 takes the serial reference path;
// otherwise the loop is OpenMP-parallel. Tasks must be independent and write
// only to their own slot so that results do not depend on the worker count.
template <class F>
void for_each_task(std::int64_t n, int workers, F&& f) {
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) f(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (std::int64_t i = 0; i < n; ++i) f(i);
#else
    for (std::int64_t i = 0; i < n; ++i) f(i);
#endif
}

inline int hardware_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace rwre
