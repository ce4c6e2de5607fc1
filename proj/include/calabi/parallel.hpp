#pragma once

// Data-parallel map used by every batch kernel. Exec::serial is the reference
// path; Exec::parallel distributes indices over OpenMP threads. Each slot is
// written by exactly one iteration and reductions happen afterwards in index
// order, so both paths produce bit-identical results.

#include <cstddef>
#include <exception>
#include <vector>

namespace calabi {

enum class Exec { serial, parallel };

template <class R, class Fn>
std::vector<R> map_indexed(std::size_t n, Fn&& fn, Exec exec) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> failures(n);
  const long count = static_cast<long>(n);
  if (exec == Exec::parallel) {
#if defined(CALABI_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
      } catch (...) {
        failures[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (long i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
      } catch (...) {
        failures[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Number of OpenMP threads the parallel path would use (1 without OpenMP).
int parallel_threads();

}  // namespace calabi
