#include "privbhq/pvalues.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "privbhq/special.hpp"

namespace privbhq {

namespace {

constexpr double kLn2 = 0.69314718055994530941723;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Cumulant machinery for one unit-rate exponential truncated at A, written in
// terms of s = 1 - theta and x = s * A.

// log((1 - exp(-x)) / x), valid for all real x.
double log_em1_ratio(double x) {
  if (std::fabs(x) < 1e-5) return -0.5 * x + x * x / 24.0;
  if (x > 0.0) return std::log1p(-std::exp(-x)) - std::log(x);
  // x < 0: (1 - e^-x)/x = (e^-x - 1)/(-x)
  if (x < -700.0) return -x - std::log(-x);
  return std::log(std::expm1(-x)) - std::log(-x);
}

// kappa(theta) = log E exp(theta * zeta) with zeta ~ truncated Exp(1).
double kappa_s(double s, double A) {
  return std::log(A) + log_em1_ratio(s * A) - std::log1p(-std::exp(-A));
}

// kappa'(theta) = 1/s - A/(e^{sA} - 1); decreasing in s, range (0, A).
double kappa_prime_s(double s, double A) {
  const double x = s * A;
  if (std::fabs(x) < 1e-5) return A * (0.5 - x / 12.0 + x * x * x / 720.0);
  if (x > 700.0) return 1.0 / s;
  if (x < -700.0) return 1.0 / s + A;
  return 1.0 / s - A / std::expm1(x);
}

// kappa''(theta) = 1/s^2 - A^2 / (4 sinh^2(sA/2)).
double kappa_second_s(double s, double A) {
  const double x = s * A;
  if (std::fabs(x) < 1e-4) return A * A * (1.0 / 12.0 - x * x / 240.0);
  if (std::fabs(x) > 700.0) return 1.0 / (s * s);
  const double sh = std::sinh(0.5 * x);
  return 1.0 / (s * s) - A * A / (4.0 * sh * sh);
}

// Solves kappa'(s) = a by bracketed bisection on s.
double solve_saddle_s(double a, double A, std::size_t n, double t) {
  double lo = 1.0;  // theta = 0
  double hi = 1.0;
  int steps = 0;
  while (kappa_prime_s(hi, A) > a) {
    hi *= 2.0;
    if (++steps > 1100) break;
  }
  steps = 0;
  while (kappa_prime_s(lo, A) < a) {
    lo = lo > 0.0 ? -1.0 : lo * 2.0;
    if (++steps > 1100) break;
  }
  if (!(kappa_prime_s(lo, A) >= a && kappa_prime_s(hi, A) <= a)) {
    std::ostringstream msg;
    msg << "truncexp_tail: saddlepoint bracket failed (n=" << n << ", A=" << A << ", t=" << t
        << ")";
    throw std::runtime_error(msg.str());
  }
  for (int iter = 0; iter < 300; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (kappa_prime_s(mid, A) >= a) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

bool SensitivityProfile::admits(double p1, double p2) const {
  if (std::isinf(eta)) return true;
  if (p1 <= nu && p2 <= nu) return true;
  if (p1 <= 0.0 || p2 <= 0.0) return false;
  const double ratio = std::fabs(std::log(p1) - std::log(p2));
  return ratio <= eta * (1.0 + 1e-12) + 1e-12;
}

std::vector<double> binomial_log_tails(std::size_t n) {
  if (n == 0) throw std::invalid_argument("binomial_log_tails: n must be positive");
  const double nd = static_cast<double>(n);
  std::vector<double> logs(n + 1);
  double acc = 0.0;  // log sum_{i=t}^n C(n, i), built from the top
  logs[n] = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    acc = logaddexp(log_choose(nd, static_cast<double>(t)), acc);
    logs[t] = acc;
  }
  const double log_total = nd * kLn2;
  for (auto& v : logs) v = std::min(v - log_total, 0.0);
  logs[0] = 0.0;  // full tail is exactly 1
  return logs;
}

double binomial_log_tail(std::size_t n, std::size_t t) {
  if (t > n) throw std::invalid_argument("binomial_log_tail: t out of range");
  return binomial_log_tails(n)[t];
}

double binomial_pvalue(const Dataset& dataset, std::size_t hypothesis) {
  if (dataset.domain != Domain::binary) {
    throw std::domain_error("binomial_pvalue: dataset domain is not binary");
  }
  const double t = dataset.column_sum(hypothesis);
  return std::exp(binomial_log_tail(dataset.n, static_cast<std::size_t>(std::llround(t))));
}

double truncexp_tail(std::size_t n, double A, double t) {
  if (n == 0 || A <= 0.0) throw std::invalid_argument("truncexp_tail: need n >= 1, A > 0");
  const double nd = static_cast<double>(n);
  if (t < 0.0 || t > nd * A) throw std::domain_error("truncexp_tail: t outside [0, nA]");
  if (t == 0.0) return 1.0;
  // The corner t = nA has zero tail in exact arithmetic; evaluate just inside.
  double a = t / nd;
  if (a >= A) a = A * (1.0 - 1e-12);

  const double s_hat = solve_saddle_s(a, A, n, t);
  const double theta_hat = 1.0 - s_hat;
  if (std::fabs(theta_hat) < 1e-8) {
    // Saddle at the origin: fall back to the normal approximation.
    const double mean = nd * kappa_prime_s(1.0, A);
    const double sd = std::sqrt(nd * kappa_second_s(1.0, A));
    return normal_sf((nd * a - mean) / sd);
  }
  double w2 = 2.0 * nd * (theta_hat * a - kappa_s(s_hat, A));
  if (w2 < 0.0) w2 = 0.0;
  const double w = (theta_hat >= 0.0 ? 1.0 : -1.0) * std::sqrt(w2);
  const double u = theta_hat * std::sqrt(nd * kappa_second_s(s_hat, A));
  double tail = normal_sf(w) + normal_pdf(w) * (1.0 / u - 1.0 / w);
  if (tail < 0.0) tail = 0.0;
  if (tail > 1.0) tail = 1.0;
  return tail;
}

double truncexp_pvalue(const Dataset& dataset, std::size_t hypothesis) {
  if (dataset.domain != Domain::bounded_real) {
    throw std::domain_error("truncexp_pvalue: dataset domain is not bounded-real");
  }
  return truncexp_tail(dataset.n, dataset.bound, dataset.column_sum(hypothesis));
}

SensitivityProfile sensitivity_scan_binomial(std::size_t n, double nu) {
  if (n == 0) throw std::invalid_argument("sensitivity_scan_binomial: n must be positive");
  if (nu < 0.0 || nu >= 1.0) {
    throw std::invalid_argument("sensitivity_scan_binomial: nu outside [0, 1)");
  }
  if (nu == 0.0) return {kInf, 0.0, true};
  const double log_nu = std::log(nu);
  const auto logs = binomial_log_tails(n);
  double eta = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (logs[t] <= log_nu && logs[t + 1] <= log_nu) continue;
    eta = std::max(eta, logs[t] - logs[t + 1]);
  }
  return {eta, nu, true};
}

SensitivityProfile sensitivity_scan_truncexp(std::size_t n, double A, double nu,
                                             std::size_t grid) {
  if (n == 0 || A <= 0.0 || grid == 0) {
    throw std::invalid_argument("sensitivity_scan_truncexp: need n >= 1, A > 0, grid > 0");
  }
  if (nu <= 0.0 || nu >= 1.0) {
    throw std::invalid_argument("sensitivity_scan_truncexp: nu outside (0, 1)");
  }
  const double log_nu = std::log(nu);
  const double step = A / static_cast<double>(grid);
  const double t_max = static_cast<double>(n) * A;
  double eta = 0.0;
  // Worst adjacent shift of the statistic is the full bound A.
  for (double t = 0.0; t + A <= t_max * (1.0 + 1e-12); t += step) {
    const double hi = std::log(truncexp_tail(n, A, std::min(t, t_max)));
    const double lo = std::log(truncexp_tail(n, A, std::min(t + A, t_max)));
    if (hi <= log_nu && lo <= log_nu) continue;
    eta = std::max(eta, hi - lo);
  }
  return {eta, nu, false};
}

double log_truncate(double p, double nu) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("log_truncate: p outside [0, 1]");
  if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("log_truncate: nu outside (0, 1)");
  return std::log(std::max(nu, p));
}

double default_nu(std::size_t m, double c) {
  if (m == 0) throw std::invalid_argument("default_nu: m must be positive");
  return std::pow(static_cast<double>(m), -1.0 - c);
}

}  // namespace privbhq
