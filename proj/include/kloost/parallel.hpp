#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kloost {

// Rough amount of work below which loops stay on one thread.
inline constexpr std::uint64_t kMinOpsPerThread = 4096;

inline int max_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_workers(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int workers_for(std::uint64_t ops) {
  const std::uint64_t want = ops / kMinOpsPerThread;
  const int cap = max_workers();
  if (want < 1) return 1;
  return want < static_cast<std::uint64_t>(cap) ? static_cast<int>(want) : cap;
}

}  // namespace kloost
