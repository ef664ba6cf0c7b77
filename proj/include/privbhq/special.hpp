#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace privbhq {

/// Standard normal density, CDF and survival function. The survival function
/// goes through erfc, accurate to better than 1e-12 relative for |x| <= 8.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_sf(double x);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// Upper tail P(T >= t) of Student's t with df degrees of freedom.
double student_t_sf(double t, double df);

/// log C(n, k) via lgamma.
double log_choose(double n, double k);

/// log(exp(a) + exp(b)) without overflow.
double logaddexp(double a, double b);

struct MeanStderr {
  double mean;
  double std_error;
};

/// Mean and standard error of the mean, two-pass with compensated summation.
/// Deterministic for a fixed element order.
MeanStderr mean_stderr(std::span<const double> xs);

/// Compensated (Neumaier) sum.
double stable_sum(std::span<const double> xs);

}  // namespace privbhq
