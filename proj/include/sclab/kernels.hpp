#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "sclab/warped_geometry.hpp"

namespace sclab {

// Execution policy for the batch kernels. The serial path is the reference.
enum class Exec { serial, parallel };

template <class F>
void for_each_index(Exec ex, std::size_t n, F&& body) {
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (ex == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  }
}

template <class F>
std::vector<double> map_indices(Exec ex, std::size_t n, F&& fn) {
  std::vector<double> out(n);
  for_each_index(ex, n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

// 2π ∫ f over each cell [x_i, x_{i+1}] with 4-point Gauss-Legendre.
std::vector<double> cell_areas(Exec ex, const WarpedMetric& m, const std::vector<double>& x);

// ∫ g over each cell with 4-point Gauss-Legendre (g evaluated strictly inside).
std::vector<double> cell_integrals(Exec ex, const std::vector<double>& x,
                                   const std::function<double(double)>& g);

// out[0] = 0, out[i+1] = out[i] + v[i]
std::vector<double> prefix_sum(const std::vector<double>& v);

}  // namespace sclab
