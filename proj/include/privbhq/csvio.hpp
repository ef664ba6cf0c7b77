#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace privbhq {

/// Formats with '.' decimal separator and 12 significant digits.
std::string format_double(double x);

/// Splits one CSV line on commas; fields are trimmed of surrounding spaces.
std::vector<std::string> split_csv_line(const std::string& line);

struct PValueTable {
  std::vector<double> p;
  std::optional<std::vector<char>> is_null;  // 1 = true null
};

/// Reads a CSV with a `p` column and an optional `is_null` column in {0, 1}.
PValueTable read_pvalues_csv(std::istream& in);
PValueTable read_pvalues_csv_file(const std::string& path);

}  // namespace privbhq
