#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace privbhq {

enum class Domain { binary, bounded_real };

/// n-individuals x m-hypotheses observation matrix. Two datasets are adjacent
/// iff they differ in exactly one row.
struct Dataset {
  std::size_t n = 0;
  std::size_t m = 0;
  Domain domain = Domain::binary;
  double bound = 0.0;  // upper bound A, meaningful for bounded_real only
  std::vector<double> values;  // row-major, n * m

  double at(std::size_t row, std::size_t col) const { return values[row * m + col]; }

  /// Column sum for the given 1-based hypothesis index.
  double column_sum(std::size_t hypothesis) const;

  /// Throws std::invalid_argument when an entry violates the domain.
  void validate() const;

  /// Exact row-wise comparison; true iff the datasets differ in exactly one row.
  bool adjacent_to(const Dataset& other) const;

  /// CSV: first line `n,m,domain[,A]` with domain in {binary, bounded-real},
  /// then n rows of m comma-separated values.
  static Dataset from_csv(std::istream& in);
  static Dataset from_csv_file(const std::string& path);
  void to_csv(std::ostream& out) const;
};

}  // namespace privbhq
