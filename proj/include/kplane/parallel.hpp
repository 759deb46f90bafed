#pragma once

#include <cstddef>
#include <cstdint>

namespace kplane {

/// Execution choice for the data-parallel kernels. Every kernel keeps a serial
/// reference path; the OpenMP path must reproduce it bit for bit.
enum class Exec { serial, parallel };

/// Thread cap: KPLANE_THREADS if set and positive, else the OpenMP default.
int max_threads();

/// Applies the KPLANE_THREADS cap to the OpenMP runtime. Idempotent.
void configure_threads();

/// Runs body(i) for i in [0, n). Iterations must be independent.
template <class Body>
void for_each_index(Exec exec, std::int64_t n, Body&& body) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) body(i);
  }
}

}  // namespace kplane
