#include "privbhq/procedures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace privbhq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_pvalues(const std::vector<double>& pvalues) {
  for (double p : pvalues) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p-value outside [0, 1]");
  }
}

// Indices 0..m-1 ordered by (p, index); the index tie-break makes the "reject
// exactly j*" rule deterministic.
std::vector<std::size_t> sorted_order(const std::vector<double>& pvalues) {
  std::vector<std::size_t> order(pvalues.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pvalues[a] != pvalues[b]) return pvalues[a] < pvalues[b];
    return a < b;
  });
  return order;
}

RejectionSet take_smallest(const std::vector<std::size_t>& order, std::size_t j_star) {
  RejectionSet out;
  out.rejected.reserve(j_star);
  for (std::size_t j = 0; j < j_star; ++j) out.rejected.push_back(order[j] + 1);
  std::sort(out.rejected.begin(), out.rejected.end());
  return out;
}

}  // namespace

void RejectionSet::count_false_rejections(const std::vector<char>& is_null) {
  std::size_t v = 0;
  for (std::size_t idx : rejected) {
    if (idx < 1 || idx > is_null.size()) {
      throw std::invalid_argument("count_false_rejections: index outside label range");
    }
    if (is_null[idx - 1]) ++v;
  }
  V = v;
}

std::vector<double> bh_cutoffs(double q, std::size_t m) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("bh_cutoffs: q outside (0, 1)");
  std::vector<double> cut(m);
  for (std::size_t j = 1; j <= m; ++j) {
    cut[j - 1] = q * static_cast<double>(j) / static_cast<double>(m);
  }
  return cut;
}

RejectionSet bhq_step_up(const std::vector<double>& pvalues, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("bhq_step_up: q outside (0, 1)");
  if (pvalues.empty()) return {};
  check_pvalues(pvalues);

  const std::size_t m = pvalues.size();
  const auto order = sorted_order(pvalues);
  std::size_t j_star = 0;
  for (std::size_t j = m; j >= 1; --j) {
    if (pvalues[order[j - 1]] <= q * static_cast<double>(j) / static_cast<double>(m)) {
      j_star = j;
      break;
    }
  }
  return take_smallest(order, j_star);
}

RejectionSet bhq_step_down(const std::vector<double>& pvalues, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("bhq_step_down: q outside (0, 1)");
  if (pvalues.empty()) return {};
  check_pvalues(pvalues);

  const std::size_t m = pvalues.size();
  const auto order = sorted_order(pvalues);
  std::size_t j_star = 0;
  for (std::size_t j = 1; j <= m; ++j) {
    if (pvalues[order[j - 1]] <= q * static_cast<double>(j) / static_cast<double>(m)) {
      j_star = j;
    } else {
      break;
    }
  }
  return take_smallest(order, j_star);
}

bool is_compliant(const RejectionSet& rejections, const std::vector<double>& pvalues,
                  const std::vector<double>& cutoffs) {
  for (std::size_t j = 1; j < cutoffs.size(); ++j) {
    if (cutoffs[j] < cutoffs[j - 1]) {
      throw std::invalid_argument("is_compliant: cutoffs must be non-decreasing");
    }
  }
  const std::size_t R = rejections.R();
  if (R == 0) return true;
  if (R > cutoffs.size()) throw std::invalid_argument("is_compliant: R exceeds cutoff count");
  double max_p = 0.0;
  for (std::size_t idx : rejections.rejected) {
    if (idx < 1 || idx > pvalues.size()) {
      throw std::invalid_argument("is_compliant: index outside p-value range");
    }
    max_p = std::max(max_p, pvalues[idx - 1]);
  }
  return max_p <= cutoffs[R - 1];
}

CutoffSchedule gamma_cutoffs(double q, std::size_t m, const PrivacyBudget& budget,
                             double eta) {
  if (q <= 0.0) throw std::invalid_argument("gamma_cutoffs: q must be positive");
  if (m == 0) throw std::invalid_argument("gamma_cutoffs: m must be positive");
  const double mp = static_cast<double>(budget.m_prime);
  const double penalty = eta * std::sqrt(10.0 * mp * std::log(1.0 / budget.delta)) *
                         std::log(6.0 * mp / q) / budget.epsilon;
  CutoffSchedule sched;
  sched.gammas.resize(budget.m_prime);
  for (std::size_t j = 1; j <= budget.m_prime; ++j) {
    sched.gammas[j - 1] =
        std::log(q * static_cast<double>(j) / static_cast<double>(m)) - penalty;
  }
  return sched;
}

double inflate_q(double q, double eta, std::size_t m_prime, double delta, double epsilon,
                 std::size_t m) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("inflate_q: q outside (0, 1)");
  return q * std::exp(24.0 * eta *
                      std::sqrt(static_cast<double>(m_prime) * std::log(1.0 / delta)) *
                      std::log(static_cast<double>(m)) / epsilon);
}

PrivateBhqResult private_bhq(const std::vector<double>& log_pvalues,
                             const CutoffSchedule& cutoffs, std::size_t m_prime,
                             double lambda, RngStream& rng) {
  if (m_prime > log_pvalues.size()) {
    throw std::invalid_argument("private_bhq: m_prime exceeds the number of hypotheses");
  }
  if (cutoffs.gammas.size() != m_prime) {
    throw std::invalid_argument("private_bhq: cutoff schedule length must equal m_prime");
  }

  PrivateBhqResult result;
  result.candidates = peel(log_pvalues, m_prime, lambda, rng);

  std::vector<double> noisy(m_prime);
  for (std::size_t j = 0; j < m_prime; ++j) noisy[j] = result.candidates[j].noisy_value;
  std::sort(noisy.begin(), noisy.end());

  // Step-up threshold rule: T = max{gamma_j : noisy_(j) <= gamma_j}.
  double threshold = kNegInf;
  for (std::size_t j = 0; j < m_prime; ++j) {
    if (noisy[j] <= cutoffs.gammas[j]) threshold = std::max(threshold, cutoffs.gammas[j]);
  }
  result.threshold = threshold;

  for (const auto& c : result.candidates) {
    if (c.noisy_value <= threshold) result.rejections.rejected.push_back(c.index);
  }
  std::sort(result.rejections.rejected.begin(), result.rejections.rejected.end());
  return result;
}

PrivateBhqResult private_bhq(const Dataset& dataset, TestFamily family, double q,
                             const PrivacyBudget& budget, double eta, double nu,
                             RngStream& rng) {
  if (budget.m_prime > dataset.m) {
    throw std::invalid_argument("private_bhq: m_prime exceeds the number of hypotheses");
  }
  if (budget.lambda <= 0.0) {
    throw std::invalid_argument("private_bhq: budget is not calibrated (lambda <= 0)");
  }
  std::vector<double> log_p(dataset.m);
  for (std::size_t h = 1; h <= dataset.m; ++h) {
    const double p = family == TestFamily::binomial ? binomial_pvalue(dataset, h)
                                                    : truncexp_pvalue(dataset, h);
    log_p[h - 1] = log_truncate(p, nu);
  }
  const CutoffSchedule sched = gamma_cutoffs(q, dataset.m, budget, eta);
  return private_bhq(log_p, sched, budget.m_prime, budget.lambda, rng);
}

}  // namespace privbhq
