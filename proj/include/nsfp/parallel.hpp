#ifndef NSFP_PARALLEL_HPP
#define NSFP_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nsfp {

/// Sets the worker count used by the parallel kernels (<= 0: hardware).
inline void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n > 0 ? n : omp_get_num_procs());
#else
  (void)n;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Parallel map over [0, n). The body must only write to index-owned data;
/// reductions are done serially by the callers so results do not depend on
/// the worker count.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace nsfp

#endif  // NSFP_PARALLEL_HPP
