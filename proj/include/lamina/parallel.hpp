#ifndef LAMINA_PARALLEL_HPP
#define LAMINA_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lamina {

/// Runs fn(i) for i in [0, n). The parallel path is used unless `serial` is
/// set; results must be written to disjoint slots so both paths produce
/// bit-identical output. The serial path is the reference implementation the
/// tests and the benchmark compare against.
template <typename Fn>
void parallelFor(std::size_t n, Fn&& fn, bool serial = false) {
    if (serial) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < (long long)n; ++i) fn((std::size_t)i);
#else
    for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

inline int parallelThreads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace lamina

#endif
