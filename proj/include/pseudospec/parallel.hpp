#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef PSEUDOSPEC_HAVE_OPENMP
#include <omp.h>
#endif

namespace pseudospec {

/// Number of workers to use when the caller passes 0 ("auto").
[[nodiscard]] inline int default_workers() noexcept {
#ifdef PSEUDOSPEC_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

[[nodiscard]] inline bool openmp_enabled() noexcept {
#ifdef PSEUDOSPEC_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

/// Runs fn(i) for i in [0, count). Each index must write only its own
/// output slot; results are then independent of the worker count.
/// The first exception thrown by any task is rethrown after the loop.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (workers <= 0) workers = default_workers();
#ifdef PSEUDOSPEC_HAVE_OPENMP
    if (workers > 1 && count > 1) {
        std::exception_ptr failure;
        std::mutex guard;
        const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (long long i = 0; i < n; ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
                std::lock_guard lock(guard);
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        return;
    }
#endif
    for (std::size_t i = 0; i < count; ++i) fn(i);
}

}  // namespace pseudospec
