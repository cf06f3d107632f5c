#pragma once

// Data-parallel inner loops shared by the geometry modules.
//
// Every kernel has a serial reference and an OpenMP version. The OpenMP
// versions write per-index results into preallocated slots and reduce them
// serially afterwards, so both variants return bit-identical results
// regardless of the thread count. Tests compare the two; bench/ times them.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "convexsmooth/types.hpp"

namespace convexsmooth::kernels {

enum class Exec { Serial, Parallel };

/// Applies CONVEXSMOOTH_THREADS (if set) as a cap on the OpenMP team size.
/// Called once per process by the CLI; harmless to call again.
void apply_thread_cap();

/// Current OpenMP team size.
int thread_count();

/// Calls fn(i) for i in [0, n). fn must only write to slot i of its outputs.
template <class Fn>
void for_each_index(std::size_t n, Fn&& fn, Exec exec = Exec::Parallel) {
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (exec == Exec::Serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

/// Extreme value over index pairs with the pair that attains it.
struct PairExtreme {
  double value = std::numeric_limits<double>::infinity();
  std::size_t first = 0;
  std::size_t second = 0;
};

/// Minimum of margin(i, j) over i < rows, j < cols (optionally i != j).
/// Ties keep the lexicographically first pair.
template <class Margin>
PairExtreme min_over_pairs(std::size_t rows, std::size_t cols, Margin&& margin, bool skip_diagonal,
                           Exec exec = Exec::Parallel) {
  std::vector<PairExtreme> per_row(rows);
  for_each_index(
      rows,
      [&](std::size_t i) {
        PairExtreme best;
        for (std::size_t j = 0; j < cols; ++j) {
          if (skip_diagonal && i == j) continue;
          const double m = margin(i, j);
          if (m < best.value) best = {m, i, j};
        }
        per_row[i] = best;
      },
      exec);
  PairExtreme out;
  for (const auto& r : per_row)
    if (r.value < out.value) out = r;
  return out;
}

/// Largest |points[i] - points[j]| over i < j.
inline PairExtreme max_pairwise_distance(const std::vector<Vec>& points, Exec exec = Exec::Parallel) {
  auto neg = min_over_pairs(
      points.size(), points.size(),
      [&](std::size_t i, std::size_t j) { return j <= i ? 0.0 : -(points[i] - points[j]).squaredNorm(); },
      false, exec);
  if (points.size() < 2) return {0.0, 0, 0};
  return {std::sqrt(-neg.value), neg.first, neg.second};
}

/// Largest value of f(i) with its index; ties keep the first index.
template <class Fn>
PairExtreme max_over_indices(std::size_t n, Fn&& fn, Exec exec = Exec::Parallel) {
  std::vector<double> vals(n);
  for_each_index(n, [&](std::size_t i) { vals[i] = fn(i); }, exec);
  PairExtreme out{-std::numeric_limits<double>::infinity(), 0, 0};
  for (std::size_t i = 0; i < n; ++i)
    if (vals[i] > out.value) out = {vals[i], i, i};
  return out;
}

}  // namespace convexsmooth::kernels
