#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "matcoef/harness.hpp"
#include "matcoef/metaplectic.hpp"

namespace matcoef::harness::detail {

// Runs f(0..n-1), in parallel when asked. The first exception is rethrown after the loop.
template <class F>
void for_each_task(std::size_t n, bool parallel, F&& f) {
  std::exception_ptr err;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(matcoef_task_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace matcoef::harness::detail

namespace matcoef::harness {
// 2 * vector_pairs unit vectors of dimension `dim`, drawn from the config seed.
std::vector<metaplectic::HermiteVector> dispersive_vectors(const SweepConfig& c, int dim);
}
