#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qem/box.hpp"
#include "qem/metric_chart.hpp"
#include "qem/qe.hpp"
#include "qem/quadrature.hpp"

namespace qem {

// Curated analytic test manifolds with known invariants, plus an import
// format for externally computed cohomogeneity-one profiles.
enum class FixtureKind {
  Sphere4,           // round S^4, stereographic chart
  Torus4,            // flat box [0, side]^4 (not a compact quasi-Einstein example)
  S2xS2,             // product of round two-spheres, Einstein iff r1 == r2
  Cp2FubiniStudy,    // CP^2, Fubini-Study in one affine chart, Ric = 6 g
  PerturbedSphere4,  // conformal perturbation of the round sphere
  ImportedProfile,   // cohomogeneity-one metric + potential from a CSV profile
};

// Accepts the command-line names: sphere4, torus4, s2xs2, cp2-fubini-study,
// perturbed-sphere4, imported-profile.
FixtureKind parse_fixture_kind(const std::string& name);
std::string to_string(FixtureKind kind);

struct FixtureSpec {
  FixtureKind kind = FixtureKind::Sphere4;
  double r = 1.0;                        // sphere4 / perturbed-sphere4 radius
  double side = 2.0 * std::numbers::pi;  // torus4 box side
  double r1 = 1.0;                       // s2xs2 factor radii
  double r2 = 1.0;
  double eps = 0.01;                     // perturbed-sphere4 amplitude (> -1)
  double m = 2.0;                        // parameter for the attached QEData (may be inf)
  std::string path;                      // imported-profile CSV path

  void validate() const;  // throws ValidationError on bad parameters
};

// Externally supplied rotationally invariant profile: arclength samples t on
// [t0, T], one positive diagonal metric coefficient per angular direction,
// potential samples f, and the (m, lambda) the data was generated with.
//
// CSV format: header `t,<coef1>,<coef2>,...,f`, decimal point, `#` comment
// lines; metadata comments `# m = <val>`, `# lambda = <val>` (required) and
// `# provenance: <text>` (optional) carry the scalar fields.
struct ImportedProfile {
  std::vector<double> t;
  std::vector<std::string> coef_names;
  std::vector<std::vector<double>> coefs;  // coefs[c][row]
  std::vector<double> f;
  double m = 0.0;
  double lambda = 0.0;
  std::string provenance;

  int rows() const { return static_cast<int>(t.size()); }
  double length() const { return t.empty() ? 0.0 : t.back() - t.front(); }  // diameter proxy
  double f_min() const;
  double f_max() const;
  double f_osc() const { return f_max() - f_min(); }

  // Throws ValidationError with row/column diagnostics: t strictly increasing,
  // coefficients positive on the open interval, m > 0 (or inf), lambda finite.
  void validate() const;
};

ImportedProfile load_profile(const std::string& path);

// Oscillation-bound comparison for an imported profile:
//   f_osc  <=  (m/(m+2)) ln(5 + 8/m - 12/m^2)  (ln 5 in the soliton limit).
struct ProfileOscCheck {
  double f_osc = 0.0;
  double bound = 0.0;
  bool pass = false;
};

ProfileOscCheck profile_osc_check(const ImportedProfile& profile);

// One entry of a fixture's expected-value table; `note` records the
// derivation so failures point back at the claimed ground truth.
struct ExpectedValue {
  std::string name;
  double value = 0.0;
  std::string note;
};

struct Fixture {
  FixtureKind kind = FixtureKind::Sphere4;
  std::string label;
  MetricChart chart;
  std::optional<QEData> qe;  // present when the fixture carries a potential
  std::string qe_note;       // caveat when the attached QEData is approximate or degenerate
  QuadratureSpec quad;       // default quadrature resolution for this chart
  Box sample_box;            // bounded region for random sampling and grid scans
  std::vector<ExpectedValue> expected;
  std::optional<ImportedProfile> profile;  // imported-profile source data

  const ExpectedValue* find_expected(const std::string& name) const;
  // Value lookup that throws ValidationError when the entry is absent.
  double expect(const std::string& name) const;
};

// Construct the chart (+ QEData where the fixture is quasi-Einstein) for a
// validated spec.  Einstein fixtures carry the trivial structure f == 0 with
// lambda = R/4; s2xs2 with r1 != r2 is not Einstein and carries no QEData.
Fixture build_fixture(const FixtureSpec& spec);

// The trivial candidate structure f == 0 with the given (m, lambda); what the
// Einstein fixtures carry, exposed so callers can probe arbitrary lambdas.
QEData trivial_potential(double m, double lambda);

}  // namespace qem
