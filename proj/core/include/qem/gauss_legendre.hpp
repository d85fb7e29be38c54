#pragma once

#include <vector>

namespace qem {

// One-dimensional quadrature rule on [-1, 1].
struct QuadRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule (exact for polynomials of degree 2n-1).
QuadRule1D gauss_legendre(int n);

// n-point midpoint rule on [-1, 1] (uniform panels, node at each center).
QuadRule1D uniform_midpoint(int n);

}  // namespace qem
