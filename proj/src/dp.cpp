#include "privbhq/dp.hpp"

#include <cmath>
#include <stdexcept>

namespace privbhq {

PrivacyBudget calibrate(double epsilon, double delta, std::size_t m_prime, double eta) {
  if (epsilon <= 0.0) throw std::invalid_argument("calibrate: epsilon must be positive");
  if (delta <= 0.0) throw std::invalid_argument("calibrate: delta = 0 is unsupported");
  if (delta >= 1.0) throw std::invalid_argument("calibrate: delta must be below 1");
  if (m_prime == 0) throw std::invalid_argument("calibrate: m_prime must be positive");
  if (eta <= 0.0) throw std::invalid_argument("calibrate: eta must be positive");

  PrivacyBudget budget;
  budget.epsilon = epsilon;
  budget.delta = delta;
  budget.m_prime = m_prime;
  budget.lambda =
      eta * std::sqrt(10.0 * static_cast<double>(m_prime) * std::log(1.0 / delta)) / epsilon;
  budget.in_theorem_regime = epsilon <= 0.5 && delta <= 0.1 && m_prime >= 10;
  return budget;
}

std::pair<double, double> advanced_composition(double epsilon_each, double delta_each,
                                               std::size_t l, double delta_prime) {
  if (epsilon_each < 0.0 || delta_each < 0.0) {
    throw std::invalid_argument("advanced_composition: negative privacy parameters");
  }
  if (delta_prime <= 0.0) {
    throw std::invalid_argument("advanced_composition: delta_prime must be positive");
  }
  if (l == 0) throw std::invalid_argument("advanced_composition: l must be at least 1");
  const double ld = static_cast<double>(l);
  const double eps_total = epsilon_each * std::sqrt(2.0 * ld * std::log(1.0 / delta_prime)) +
                           ld * epsilon_each * std::expm1(epsilon_each);
  return {eps_total, ld * delta_each + delta_prime};
}

std::pair<double, double> laplace_concentration_bound(std::size_t n, double lambda,
                                                      double alpha) {
  if (n == 0) throw std::invalid_argument("laplace_concentration_bound: n must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("laplace_concentration_bound: alpha outside (0, 1)");
  }
  const double nd = static_cast<double>(n);
  return {-lambda * std::log(nd / (2.0 * alpha)), lambda * std::log(nd / alpha)};
}

double laplace_sample(double scale, RngStream& rng) {
  if (scale <= 0.0) throw std::invalid_argument("laplace_sample: scale must be positive");
  return rng.laplace(scale);
}

NoisyCandidate private_min(const std::vector<double>& values,
                           const std::vector<char>& removed, double noise_scale,
                           RngStream& rng) {
  if (values.empty()) throw std::invalid_argument("private_min: empty value sequence");
  if (removed.size() != values.size()) {
    throw std::invalid_argument("private_min: removal mask size mismatch");
  }
  if (noise_scale < 0.0) throw std::invalid_argument("private_min: negative noise scale");

  bool found = false;
  std::size_t best = 0;
  double best_noisy = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (removed[j]) continue;
    const double noisy = noise_scale > 0.0 ? values[j] + rng.laplace(noise_scale) : values[j];
    if (!found || noisy < best_noisy) {
      found = true;
      best = j;
      best_noisy = noisy;
    }
  }
  if (!found) throw std::invalid_argument("private_min: all values removed");

  const double fresh = noise_scale > 0.0 ? rng.laplace(noise_scale) : 0.0;
  return {best + 1, values[best] + fresh};
}

NoisyCandidate private_min(const std::vector<double>& values, double sensitivity,
                           double epsilon, RngStream& rng) {
  if (sensitivity < 0.0) throw std::invalid_argument("private_min: negative sensitivity");
  if (epsilon <= 0.0) throw std::invalid_argument("private_min: epsilon must be positive");
  const std::vector<char> removed(values.size(), 0);
  return private_min(values, removed, 2.0 * sensitivity / epsilon, rng);
}

std::vector<NoisyCandidate> peel(const std::vector<double>& values, std::size_t m_prime,
                                 double lambda, RngStream& rng) {
  if (m_prime > values.size()) {
    throw std::invalid_argument("peel: m_prime exceeds the number of hypotheses");
  }
  std::vector<char> removed(values.size(), 0);
  std::vector<NoisyCandidate> out;
  out.reserve(m_prime);
  for (std::size_t j = 0; j < m_prime; ++j) {
    const NoisyCandidate c = private_min(values, removed, lambda, rng);
    removed[c.index - 1] = 1;
    out.push_back(c);
  }
  return out;
}

}  // namespace privbhq
