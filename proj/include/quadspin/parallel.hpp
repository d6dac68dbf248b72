#pragma once

// OpenMP task fan-out over independent indices. Every kernel writes its
// results into a slot owned by the index, so output never depends on the
// worker count or on completion order.

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace quadspin {

struct Parallelism {
  /// Worker threads; 0 uses the OpenMP default (all available cores).
  int workers = 0;

  static Parallelism serial() { return Parallelism{1}; }
  int resolved() const {
#ifdef _OPENMP
    return workers > 0 ? workers : omp_get_max_threads();
#else
    return 1;
#endif
  }
};

/// Runs body(i) for i in [0, n). The first exception (lowest index) is
/// rethrown after all workers finish.
template <class Body>
void parallel_for(std::size_t n, Parallelism parallelism, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(parallelism.resolved())
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace quadspin
