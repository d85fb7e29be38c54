#include "qem/profile.hpp"

#include <algorithm>
#include <cmath>

#include "qem/csv.hpp"
#include "qem/errors.hpp"

namespace qem {

void GeodesicProfile::validate() const {
  if (s.size() < 2) {
    throw ValidationError("geodesic profile: need at least 2 samples, got " +
                          std::to_string(s.size()));
  }
  if (s.size() != ric.size()) {
    throw ValidationError("geodesic profile: s has " + std::to_string(s.size()) +
                          " samples but ric has " + std::to_string(ric.size()));
  }
  if (!f.empty() && f.size() != s.size()) {
    throw ValidationError("geodesic profile: s has " + std::to_string(s.size()) +
                          " samples but f has " + std::to_string(f.size()));
  }
  if (s.front() != 0.0) {
    throw ValidationError("geodesic profile: arclength must start at 0, got " +
                          std::to_string(s.front()));
  }
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (!(s[i + 1] > s[i])) {
      throw ValidationError("geodesic profile: arclength not strictly increasing at sample " +
                            std::to_string(i + 1) + " (s=" + std::to_string(s[i + 1]) +
                            " after s=" + std::to_string(s[i]) + ")");
    }
    if (!std::isfinite(ric[i]) || !std::isfinite(ric[i + 1])) {
      throw ValidationError("geodesic profile: non-finite ric sample near index " +
                            std::to_string(i));
    }
  }
  if (L != s.back()) {
    throw ValidationError("geodesic profile: L=" + std::to_string(L) +
                          " does not match final arclength " + std::to_string(s.back()));
  }
}

double GeodesicProfile::ric_min() const {
  return *std::min_element(ric.begin(), ric.end());
}

double GeodesicProfile::ric_max() const {
  return *std::max_element(ric.begin(), ric.end());
}

GeodesicProfile load_geodesic_profile(const std::string& path) {
  CsvTable table = read_csv(path);
  bool with_f = false;
  if (table.header == std::vector<std::string>{"s", "ric"}) {
    with_f = false;
  } else if (table.header == std::vector<std::string>{"s", "ric", "f"}) {
    with_f = true;
  } else {
    std::string got;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      if (i) got += ",";
      got += table.header[i];
    }
    throw ValidationError("geodesic profile '" + path +
                          "': header must be 's,ric' or 's,ric,f', got '" + got + "'");
  }

  GeodesicProfile profile;
  profile.s.reserve(table.rows.size());
  profile.ric.reserve(table.rows.size());
  if (with_f) profile.f.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    profile.s.push_back(row[0]);
    profile.ric.push_back(row[1]);
    if (with_f) profile.f.push_back(row[2]);
  }
  if (profile.s.empty()) {
    throw ValidationError("geodesic profile '" + path + "': no data rows");
  }
  profile.L = profile.s.back();
  profile.validate();
  return profile;
}

void save_geodesic_profile(const GeodesicProfile& profile, const std::string& path) {
  profile.validate();
  const std::vector<std::string> header = profile.has_f()
                                              ? std::vector<std::string>{"s", "ric", "f"}
                                              : std::vector<std::string>{"s", "ric"};
  std::vector<std::vector<double>> rows;
  rows.reserve(profile.s.size());
  for (std::size_t i = 0; i < profile.s.size(); ++i) {
    std::vector<double> row{profile.s[i], profile.ric[i]};
    if (profile.has_f()) row.push_back(profile.f[i]);
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

}  // namespace qem
