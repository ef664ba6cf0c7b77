#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "privbhq/fdr.hpp"
#include "privbhq/random.hpp"

namespace privbhq {

enum class Alternative { one_sided, two_sided };

struct GeneratedStats {
  std::vector<double> stats;
  std::vector<char> is_null;  // 1 = true null
};

/// Negatively cross-correlated multivariate normal: unit variances,
/// covariance -1/sqrt(m0 m1) between the null and non-null blocks, zero
/// elsewhere. Non-nulls are the first m1 coordinates with mean mu. Sampling
/// uses the closed-form rank-2 projector square root of the covariance, O(m)
/// per draw.
GeneratedStats gen_normal_example(std::size_t m, std::size_t m1, double mu, RngStream& rng);

/// n iid draws from the normal example's distribution, reduced to one-sample
/// t statistics per coordinate.
GeneratedStats gen_student_example(std::size_t m, std::size_t m1, double mu, std::size_t n,
                                   RngStream& rng);

/// m_pairs independent 2x2 blocks: null X = Z and non-null
/// X~ = mu_tilde + rho Z + sqrt(1 - rho^2) Z'. Output interleaves (X, X~)
/// per pair; pi0 = 1/2. rho must lie in [-1, 1].
GeneratedStats gen_block_example(std::size_t m_pairs, double mu_tilde, double rho,
                                 RngStream& rng);

/// Normal p-values: one-sided Phi(-x), two-sided 2 Phi(-|x|).
std::vector<double> z_pvalues(const std::vector<double>& stats, Alternative alternative);

/// Student-t p-values with df degrees of freedom. Non-finite statistics
/// (zero sample variance upstream) map to degenerate_p and are counted.
std::vector<double> t_pvalues(const std::vector<double>& stats, std::size_t df,
                              Alternative alternative, double degenerate_p = 1e-300,
                              std::size_t* degenerate_count = nullptr);

struct AdversarialOutcome {
  FdpRecord record;
  bool feasible = true;
  std::size_t j_star = 0;
  double u_j_star = 0.0;
  bool compliant = true;
};

/// The optimality construction: m0 uniform true nulls plus m - m0 p-values
/// pinned at zero; rejects the j* smallest nulls maximizing j/U_(j) over the
/// realizable ranks k <= j <= m0 plus max{ceil(m U_(j*)/q) - j*, 0} zeros.
/// Rank j is realizable when its required zero count fits in m - m0; a
/// replicate with no realizable rank is infeasible. Compliance with the BHq
/// critical values is asserted on every feasible replicate.
AdversarialOutcome adversarial_compliant(std::size_t m, std::size_t m0, std::size_t k,
                                         double q, RngStream& rng);

enum class ExampleKind { normal, student, block, adversarial };

struct ExperimentConfig {
  ExampleKind example = ExampleKind::normal;
  std::size_t m = 1000;          // hypotheses (block: pairs; adversarial: total)
  std::vector<double> grid;      // m1 values (normal/student), rho (block), m0 (adversarial)
  double q = 0.1;
  std::size_t reps = 100;
  Alternative alternative = Alternative::one_sided;
  double mu = 2.0;               // normal/student effect size
  double mu_tilde = 1.5;         // block effect size
  std::size_t n = 10;            // student sample size
  std::vector<std::size_t> ks = {1, 2, 5};
  std::uint64_t seed = 0;
};

struct ExperimentRow {
  std::string example;
  std::size_t m = 0;
  double m1_or_rho = 0.0;
  std::string alternative;
  std::size_t k = 0;
  double fdr_hat = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  std::size_t infeasible = 0;  // adversarial only
};

/// BHq step-up at level q over the configured grid; per-point empirical FDR_k
/// with standard errors and the C_k pi0 q bound (bound q for k = 1). Row order
/// follows the configuration, replicate streams are derived per (point, rep).
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

}  // namespace privbhq
