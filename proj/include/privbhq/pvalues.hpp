#pragma once

#include <cstddef>
#include <vector>

#include "privbhq/dataset.hpp"

namespace privbhq {

/// Multiplicative sensitivity profile (eta, nu) of a p-value family: adjacent
/// databases either both land at or below nu, or their p-values differ by at
/// most a factor exp(eta).
struct SensitivityProfile {
  double eta = 0.0;
  double nu = 0.0;
  /// False when eta came from a gridded numeric scan rather than an
  /// exhaustive one.
  bool exact = true;

  /// The defining disjunction, for one adjacent pair of p-values.
  bool admits(double p1, double p2) const;
};

/// log of the upper tail P(Bin(n, 1/2) >= t) for every t in {0, ..., n},
/// accumulated in log space so tails near 2^-n do not underflow.
std::vector<double> binomial_log_tails(std::size_t n);

/// log P(Bin(n, 1/2) >= t).
double binomial_log_tail(std::size_t n, std::size_t t);

/// Exact upper binomial tail p-value for a binary dataset column.
/// `hypothesis` is 1-based.
double binomial_pvalue(const Dataset& dataset, std::size_t hypothesis);

/// Upper tail P(T >= t) for T a sum of n independent unit-rate exponentials
/// truncated at A, by exponential-tilting saddlepoint (Lugannani-Rice).
double truncexp_tail(std::size_t n, double A, double t);

/// Saddlepoint p-value for a bounded-real dataset column. `hypothesis` is
/// 1-based; t is the column sum.
double truncexp_pvalue(const Dataset& dataset, std::size_t hypothesis);

/// Exhaustive scan over adjacent statistic values t, t+1: eta is the largest
/// |log p(t) - log p(t+1)| among pairs not both at or below nu. The returned
/// profile satisfies the multiplicative-sensitivity definition exactly for
/// the binomial family. nu == 0 is reported as unbounded (eta = +inf).
SensitivityProfile sensitivity_scan_binomial(std::size_t n, double nu);

/// Gridded scan for the truncated-exponential family, step A / grid between
/// statistics that differ by the worst-case row shift A. Not provably exact;
/// the profile is flagged numeric.
SensitivityProfile sensitivity_scan_truncexp(std::size_t n, double A, double nu,
                                             std::size_t grid = 1000);

/// log max{nu, p}, the truncated-log statistic fed to the private mechanisms.
double log_truncate(double p, double nu);

/// Default truncation floor m^-(1+c), below the Bonferroni level.
double default_nu(std::size_t m, double c = 0.5);

}  // namespace privbhq
