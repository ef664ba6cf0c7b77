#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace privbhq {

/// Per-replicate false discovery proportion record.
struct FdpRecord {
  std::size_t V = 0;
  std::size_t R = 0;

  /// (V/R) 1[V >= k]; 0 when R == 0.
  double fdp_k(std::size_t k) const;
  /// (V/R) 1[R >= k]; 0 when R == 0.
  double fdp_upper_k(std::size_t k) const;
};

struct CkEstimate {
  std::size_t k = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t reps = 0;
  std::size_t j_max = 0;
};

/// Monte Carlo estimate of C_k = E[max_{k <= j <= j_max} j / T_j] with T_j a
/// running sum of iid unit exponentials. All requested k share each
/// replicate's exponential path; the running max is streamed without storing
/// the path. Rejects k < 2 (C_1 is infinite).
std::vector<CkEstimate> estimate_ck(const std::vector<std::size_t>& ks, std::size_t reps,
                                    std::size_t j_max, std::uint64_t seed);
CkEstimate estimate_ck(std::size_t k, std::size_t reps, std::size_t j_max,
                       std::uint64_t seed);

/// Finite-n constant C_k^(n) = E[max_{k <= j <= n} j / (n U_(j))] over order
/// statistics of n uniforms (generated via exponential spacings).
CkEstimate estimate_ck_finite(std::size_t k, std::size_t n, std::size_t reps,
                              std::uint64_t seed);

/// Monte Carlo C_k values at the reference resolution (reps 1e4, j_max 1e5)
/// for k in {2, 3, 4, 5, 10, 25}; throws for other k.
double ck_reference(std::size_t k);

/// FDR_k bound C_k pi0 q using an explicit C_k value.
double bound_fdr_k(double ck, double pi0, double q);
/// Same, using the cached reference C_k.
double bound_fdr_k(std::size_t k, double pi0, double q);

/// FDR^k bound (1 + 2/sqrt(q k)) q; k = 1 is admissible.
double bound_fdr_upper_k(std::size_t k, double q);

}  // namespace privbhq
