#include "privbhq/fdr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "privbhq/random.hpp"
#include "privbhq/special.hpp"

namespace privbhq {

double FdpRecord::fdp_k(std::size_t k) const {
  if (R == 0 || V < k) return 0.0;
  return static_cast<double>(V) / static_cast<double>(R);
}

double FdpRecord::fdp_upper_k(std::size_t k) const {
  if (R == 0 || R < k) return 0.0;
  return static_cast<double>(V) / static_cast<double>(R);
}

std::vector<CkEstimate> estimate_ck(const std::vector<std::size_t>& ks, std::size_t reps,
                                    std::size_t j_max, std::uint64_t seed) {
  if (ks.empty()) throw std::invalid_argument("estimate_ck: empty k list");
  if (reps == 0) throw std::invalid_argument("estimate_ck: reps must be positive");
  std::vector<std::size_t> sorted_ks = ks;
  std::sort(sorted_ks.begin(), sorted_ks.end());
  for (std::size_t k : sorted_ks) {
    if (k < 2) throw std::invalid_argument("estimate_ck: k must be at least 2 (C_1 is infinite)");
    if (k > j_max) throw std::invalid_argument("estimate_ck: j_max must be at least k");
  }

  const std::size_t nk = sorted_ks.size();
  std::vector<std::vector<double>> samples(nk, std::vector<double>(reps));
  std::vector<double> maxes(nk);

  for (std::size_t rep = 0; rep < reps; ++rep) {
    RngStream rng(derive_seed(seed, 0x636b, rep));
    std::fill(maxes.begin(), maxes.end(), 0.0);
    double t = 0.0;
    std::size_t active = 0;  // how many of the sorted ks have k <= j
    for (std::size_t j = 1; j <= j_max; ++j) {
      t += rng.exponential();
      while (active < nk && sorted_ks[active] <= j) ++active;
      const double v = static_cast<double>(j) / t;
      for (std::size_t i = 0; i < active; ++i) {
        if (v > maxes[i]) maxes[i] = v;
      }
    }
    for (std::size_t i = 0; i < nk; ++i) samples[i][rep] = maxes[i];
  }

  std::vector<CkEstimate> out(nk);
  for (std::size_t i = 0; i < nk; ++i) {
    const MeanStderr ms = mean_stderr(samples[i]);
    out[i] = {sorted_ks[i], ms.mean, ms.std_error, reps, j_max};
  }
  return out;
}

CkEstimate estimate_ck(std::size_t k, std::size_t reps, std::size_t j_max,
                       std::uint64_t seed) {
  return estimate_ck(std::vector<std::size_t>{k}, reps, j_max, seed).front();
}

CkEstimate estimate_ck_finite(std::size_t k, std::size_t n, std::size_t reps,
                              std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("estimate_ck_finite: k must be at least 2");
  if (n < k) throw std::invalid_argument("estimate_ck_finite: n must be at least k");
  if (reps == 0) throw std::invalid_argument("estimate_ck_finite: reps must be positive");

  std::vector<double> spacings(n + 1);
  std::vector<double> samples(reps);
  const double nd = static_cast<double>(n);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    RngStream rng(derive_seed(seed, 0x636b66, rep));
    // U_(j) = T_j / T_{n+1} for T a running sum of n+1 unit exponentials.
    double total = 0.0;
    for (auto& s : spacings) {
      s = rng.exponential();
      total += s;
    }
    double t = 0.0;
    double best = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      t += spacings[j - 1];
      if (j < k) continue;
      const double v = static_cast<double>(j) * total / (nd * t);
      if (v > best) best = v;
    }
    samples[rep] = best;
  }
  const MeanStderr ms = mean_stderr(samples);
  return {k, ms.mean, ms.std_error, reps, n};
}

double ck_reference(std::size_t k) {
  switch (k) {
    case 2: return 2.41;
    case 3: return 1.85;
    case 4: return 1.65;
    case 5: return 1.54;
    case 10: return 1.32;
    case 25: return 1.18;
    default:
      throw std::invalid_argument("ck_reference: no cached value for this k");
  }
}

double bound_fdr_k(double ck, double pi0, double q) {
  if (ck < 1.0) throw std::invalid_argument("bound_fdr_k: C_k must be at least 1");
  if (!(pi0 >= 0.0 && pi0 <= 1.0)) throw std::invalid_argument("bound_fdr_k: pi0 outside [0, 1]");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("bound_fdr_k: q outside (0, 1)");
  return ck * pi0 * q;
}

double bound_fdr_k(std::size_t k, double pi0, double q) {
  return bound_fdr_k(ck_reference(k), pi0, q);
}

double bound_fdr_upper_k(std::size_t k, double q) {
  if (k == 0) throw std::invalid_argument("bound_fdr_upper_k: k must be at least 1");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("bound_fdr_upper_k: q outside (0, 1)");
  return (1.0 + 2.0 / std::sqrt(q * static_cast<double>(k))) * q;
}

}  // namespace privbhq
