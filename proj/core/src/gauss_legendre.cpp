#include "qem/gauss_legendre.hpp"

#include <cmath>
#include <numbers>

#include "qem/errors.hpp"

namespace qem {

// Newton iteration on the Legendre polynomial P_n.  P_n and P_n' come from the
// three-term recurrence; the Chebyshev-like initial guess converges in a
// handful of steps for every root.
QuadRule1D gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: need at least 1 node");
  QuadRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Recurrence: (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Symmetrize: the recurrence-and-Newton loop breaks the exact +-x pairing
    // at the last bit; recompute the weight from the converged node.
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

QuadRule1D uniform_midpoint(int n) {
  if (n < 1) throw ValidationError("uniform_midpoint: need at least 1 node");
  QuadRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double w = 2.0 / n;
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = -1.0 + (i + 0.5) * w;
    rule.weights[i] = w;
  }
  return rule;
}

}  // namespace qem
