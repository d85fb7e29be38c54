#pragma once

#include <string>
#include <vector>

namespace qem {

// Arclength-sampled data along a unit-speed curve: Ric(gamma', gamma') and
// optionally the potential f restricted to the curve.  Produced by the
// geodesic integrator or loaded from CSV (header "s,ric" or "s,ric,f").
struct GeodesicProfile {
  std::vector<double> s;    // strictly increasing, s.front() == 0
  std::vector<double> ric;  // Ric(gamma'(s_i), gamma'(s_i))
  std::vector<double> f;    // empty when no potential samples are carried
  double L = 0.0;           // total length == s.back()
  bool truncated = false;   // the source curve left its chart domain early

  bool has_f() const { return !f.empty(); }
  // Throws ValidationError (with the offending sample index) if the grid is
  // not strictly increasing from 0 or the arrays disagree in length.
  void validate() const;

  double ric_min() const;
  double ric_max() const;
};

GeodesicProfile load_geodesic_profile(const std::string& path);
void save_geodesic_profile(const GeodesicProfile& profile, const std::string& path);

}  // namespace qem
