#pragma once

#include <cstddef>
#include <vector>

namespace qem {

// Pairwise (cascade) summation over a fixed-order sequence.  The reduction
// tree depends only on the element count, so a given input order always
// produces the bit-identical result — the building block of run-to-run
// deterministic integrals — while the O(log n) error growth keeps 5M-node
// quadrature sums accurate near machine precision.
inline double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

}  // namespace qem
