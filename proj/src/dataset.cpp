#include "privbhq/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "privbhq/csvio.hpp"

namespace privbhq {

double Dataset::column_sum(std::size_t hypothesis) const {
  if (hypothesis < 1 || hypothesis > m) {
    throw std::invalid_argument("Dataset::column_sum: hypothesis index out of range");
  }
  const std::size_t col = hypothesis - 1;
  double sum = 0.0;
  for (std::size_t row = 0; row < n; ++row) sum += at(row, col);
  return sum;
}

void Dataset::validate() const {
  if (n == 0 || m == 0) throw std::invalid_argument("Dataset: n and m must be positive");
  if (values.size() != n * m) throw std::invalid_argument("Dataset: value count mismatch");
  if (domain == Domain::bounded_real && bound <= 0.0) {
    throw std::invalid_argument("Dataset: bounded-real domain requires A > 0");
  }
  for (double v : values) {
    if (domain == Domain::binary) {
      if (v != 0.0 && v != 1.0) throw std::invalid_argument("Dataset: binary entry not in {0, 1}");
    } else {
      if (!(v >= 0.0 && v <= bound)) {
        throw std::invalid_argument("Dataset: bounded-real entry outside [0, A]");
      }
    }
  }
}

bool Dataset::adjacent_to(const Dataset& other) const {
  if (n != other.n || m != other.m || domain != other.domain) return false;
  std::size_t differing_rows = 0;
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < m; ++col) {
      if (at(row, col) != other.at(row, col)) {
        ++differing_rows;
        break;
      }
    }
  }
  return differing_rows == 1;
}

Dataset Dataset::from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("dataset CSV: missing header");
  const auto header = split_csv_line(line);
  if (header.size() < 3) throw std::invalid_argument("dataset CSV: header needs n,m,domain");

  Dataset ds;
  ds.n = static_cast<std::size_t>(std::stoull(header[0]));
  ds.m = static_cast<std::size_t>(std::stoull(header[1]));
  if (header[2] == "binary") {
    ds.domain = Domain::binary;
  } else if (header[2] == "bounded-real") {
    ds.domain = Domain::bounded_real;
    if (header.size() < 4) throw std::invalid_argument("dataset CSV: bounded-real needs A");
    ds.bound = std::stod(header[3]);
  } else {
    throw std::invalid_argument("dataset CSV: unknown domain '" + header[2] + "'");
  }

  ds.values.reserve(ds.n * ds.m);
  for (std::size_t row = 0; row < ds.n; ++row) {
    if (!std::getline(in, line)) throw std::invalid_argument("dataset CSV: too few rows");
    const auto fields = split_csv_line(line);
    if (fields.size() != ds.m) throw std::invalid_argument("dataset CSV: wrong column count");
    for (const auto& f : fields) ds.values.push_back(std::stod(f));
  }
  ds.validate();
  return ds;
}

Dataset Dataset::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dataset file: " + path);
  return from_csv(in);
}

void Dataset::to_csv(std::ostream& out) const {
  out << n << ',' << m << ',';
  if (domain == Domain::binary) {
    out << "binary";
  } else {
    out << "bounded-real," << format_double(bound);
  }
  out << '\n';
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < m; ++col) {
      if (col) out << ',';
      out << format_double(at(row, col));
    }
    out << '\n';
  }
}

}  // namespace privbhq
