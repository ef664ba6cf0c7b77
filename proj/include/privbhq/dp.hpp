#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "privbhq/random.hpp"

namespace privbhq {

/// Privacy budget for a PrivateBHq run: (epsilon, delta) target, number of
/// peel invocations m', and the Laplace scale lambda calibrated to them.
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  std::size_t m_prime = 0;
  double lambda = 0.0;
  /// True when (epsilon, delta, m') lie inside the calibration theorem's
  /// hypotheses (epsilon <= 0.5, delta <= 0.1, m' >= 10). Outside the box the
  /// formula is still computed but carries no (epsilon, delta)-DP claim.
  bool in_theorem_regime = true;
};

/// lambda = eta * sqrt(10 m' ln(1/delta)) / epsilon.
PrivacyBudget calibrate(double epsilon, double delta, std::size_t m_prime, double eta);

/// Total privacy loss of l sequential (eps, delta)-DP mechanisms:
/// (eps sqrt(2 l ln(1/delta')) + l eps (e^eps - 1), l delta + delta').
std::pair<double, double> advanced_composition(double epsilon_each, double delta_each,
                                               std::size_t l, double delta_prime);

/// Concentration of n iid Lap(lambda) draws at level alpha: with probability
/// >= 1 - alpha all draws exceed the first component, and with probability
/// >= 1 - alpha all draws are below the second in absolute value.
std::pair<double, double> laplace_concentration_bound(std::size_t n, double lambda,
                                                      double alpha);

/// One Lap(scale) draw via inverse CDF on a uniform from the stream.
double laplace_sample(double scale, RngStream& rng);

struct NoisyCandidate {
  std::size_t index = 0;  // 1-based hypothesis index
  double noisy_value = 0.0;
};

/// Report Noisy Min with an explicit noise scale. Adds independent
/// Lap(noise_scale) to every value whose removed flag is unset, returns the
/// argmin index (ties to the smallest index) together with the true value at
/// that index plus one fresh draw. noise_scale == 0 is the NON-PRIVATE
/// noise-off test mode: exact argmin, zero noise.
NoisyCandidate private_min(const std::vector<double>& values,
                           const std::vector<char>& removed, double noise_scale,
                           RngStream& rng);

/// Report Noisy Min at sensitivity Delta and privacy parameter epsilon; the
/// per-draw scale is 2 Delta / epsilon.
NoisyCandidate private_min(const std::vector<double>& values, double sensitivity,
                           double epsilon, RngStream& rng);

/// Peeling mechanism: m' sequential Private Min calls at scale lambda, each
/// winner removed from contention. Returned indices are distinct, in
/// selection order. lambda == 0 is the non-private noise-off mode.
std::vector<NoisyCandidate> peel(const std::vector<double>& values, std::size_t m_prime,
                                 double lambda, RngStream& rng);

}  // namespace privbhq
