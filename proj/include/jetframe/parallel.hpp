#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace jetframe {

/// Selects between the OpenMP kernels and their serial reference loops.
enum class Exec { Serial, Parallel };

int worker_count();

/// Runs body(i) for i in [0, count). The parallel path uses a dynamic OpenMP schedule;
/// body must only write to slot i of its outputs. The first exception thrown by any
/// iteration is rethrown on the calling thread.
template <typename Body> void for_each_index(Exec exec, std::size_t count, Body&& body) {
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace jetframe
