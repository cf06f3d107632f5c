#include "convexsmooth/kernels.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace convexsmooth::kernels {

void apply_thread_cap() {
  const char* env = std::getenv("CONVEXSMOOTH_THREADS");
  if (env == nullptr) return;
  try {
    const int cap = std::stoi(env);
    if (cap > 0 && cap < omp_get_max_threads()) omp_set_num_threads(cap);
  } catch (const std::exception&) {
    // malformed value: keep the runtime default
  }
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace convexsmooth::kernels
