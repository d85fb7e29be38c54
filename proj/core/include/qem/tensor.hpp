#pragma once

#include <array>
#include <cstddef>

namespace qem {

// Charts are low-dimensional (n <= kMaxDim); curvature tensors live in fixed
// stack storage so the per-point evaluation allocates nothing.
inline constexpr int kMaxDim = 6;

// T(k,i,j), used for Christoffel symbols Gamma^k_{ij}.
struct Tensor3 {
  int n = 0;
  std::array<double, kMaxDim * kMaxDim * kMaxDim> a{};

  explicit Tensor3(int dim = 0) : n(dim) {}
  double& operator()(int k, int i, int j) { return a[(k * n + i) * n + j]; }
  double operator()(int k, int i, int j) const { return a[(k * n + i) * n + j]; }
};

// T(i,j,k,l), used for the Riemann and Weyl tensors with all indices down.
struct Tensor4 {
  int n = 0;
  std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim> a{};

  explicit Tensor4(int dim = 0) : n(dim) {}
  double& operator()(int i, int j, int k, int l) { return a[((i * n + j) * n + k) * n + l]; }
  double operator()(int i, int j, int k, int l) const { return a[((i * n + j) * n + k) * n + l]; }
};

}  // namespace qem
