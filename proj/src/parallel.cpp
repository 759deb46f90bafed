#include "kplane/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace kplane {

int max_threads() {
  const char* env = std::getenv("KPLANE_THREADS");
  const int runtime = omp_get_max_threads();
  if (env != nullptr) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) return cap < runtime ? cap : runtime;
    } catch (...) {
      // unparsable value: ignore the cap
    }
  }
  return runtime;
}

void configure_threads() { omp_set_num_threads(max_threads()); }

}  // namespace kplane
