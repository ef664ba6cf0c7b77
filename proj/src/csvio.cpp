#include "privbhq/csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace privbhq {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  for (auto& f : fields) {
    const auto begin = f.find_first_not_of(" \t");
    const auto end = f.find_last_not_of(" \t");
    f = begin == std::string::npos ? std::string() : f.substr(begin, end - begin + 1);
  }
  return fields;
}

PValueTable read_pvalues_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("p-value CSV: missing header");
  const auto header = split_csv_line(line);
  const auto p_it = std::find(header.begin(), header.end(), "p");
  if (p_it == header.end()) throw std::invalid_argument("p-value CSV: no `p` column");
  const std::size_t p_col = static_cast<std::size_t>(p_it - header.begin());
  const auto null_it = std::find(header.begin(), header.end(), "is_null");
  const bool has_null = null_it != header.end();
  const std::size_t null_col = has_null ? static_cast<std::size_t>(null_it - header.begin()) : 0;

  PValueTable table;
  if (has_null) table.is_null.emplace();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw std::invalid_argument("p-value CSV: ragged row");
    const double p = std::stod(fields[p_col]);
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p-value CSV: p outside [0, 1]");
    table.p.push_back(p);
    if (has_null) {
      const std::string& v = fields[null_col];
      if (v != "0" && v != "1") throw std::invalid_argument("p-value CSV: is_null not in {0, 1}");
      table.is_null->push_back(v == "1" ? 1 : 0);
    }
  }
  return table;
}

PValueTable read_pvalues_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open p-value file: " + path);
  return read_pvalues_csv(in);
}

}  // namespace privbhq
