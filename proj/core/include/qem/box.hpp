#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <limits>

#include "qem/errors.hpp"

namespace qem {

// Axis-aligned box of coordinate intervals [lo_a, hi_a].  Charts whose natural
// domain is all of R^n use a very large box; quadrature node maps and geodesic
// runs stay well inside it.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  Box() = default;
  Box(Eigen::VectorXd lo_, Eigen::VectorXd hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size()) throw ValidationError("box: lo/hi dimension mismatch");
    for (int a = 0; a < lo.size(); ++a)
      if (!(lo[a] < hi[a])) throw ValidationError("box: empty interval on axis " + std::to_string(a));
  }

  // Cube [l, h]^n.
  static Box cube(int n, double l, double h) {
    return Box(Eigen::VectorXd::Constant(n, l), Eigen::VectorXd::Constant(n, h));
  }

  int dim() const { return static_cast<int>(lo.size()); }

  // True if p lies inside with at least `margin` clearance to every face.
  bool contains(const Eigen::VectorXd& p, double margin = 0.0) const {
    if (p.size() != lo.size()) return false;
    for (int a = 0; a < lo.size(); ++a)
      if (p[a] < lo[a] + margin || p[a] > hi[a] - margin) return false;
    return true;
  }

  double min_extent() const {
    double m = std::numeric_limits<double>::infinity();
    for (int a = 0; a < lo.size(); ++a) m = std::min(m, hi[a] - lo[a]);
    return m;
  }
};

}  // namespace qem
