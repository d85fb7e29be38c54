#pragma once

#include <string>
#include <vector>

namespace qem {

// Comma-separated numeric table with a single header row.  Lines starting
// with '#' are kept verbatim (metadata like "# m = 2.5" rides along as
// comments); parse errors carry the 1-based file line number.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> comments;
};

CsvTable read_csv(const std::string& path);

// Writes header + rows with 12-significant-digit floats (deterministic).
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// %.12g rendering shared by the CSV and report writers.
std::string format_g12(double v);

}  // namespace qem
