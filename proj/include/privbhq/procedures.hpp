#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "privbhq/dataset.hpp"
#include "privbhq/dp.hpp"
#include "privbhq/pvalues.hpp"
#include "privbhq/random.hpp"

namespace privbhq {

/// Outcome of a multiple-testing procedure: distinct 1-based hypothesis
/// indices in ascending order, plus the false-rejection count when truth
/// labels are available.
struct RejectionSet {
  std::vector<std::size_t> rejected;
  std::optional<std::size_t> V;

  std::size_t R() const { return rejected.size(); }

  /// Fills V from truth labels (is_null[i] != 0 means hypothesis i+1 is a
  /// true null).
  void count_false_rejections(const std::vector<char>& is_null);
};

/// BHq critical values q j / m for j = 1..m.
std::vector<double> bh_cutoffs(double q, std::size_t m);

/// Step-up: reject the j* smallest p-values where j* is the largest rank with
/// p_(j) <= q j / m. Boundary ties are resolved by index so exactly j* are
/// rejected.
RejectionSet bhq_step_up(const std::vector<double>& pvalues, double q);

/// Step-down: reject ranks 1..j* where j* is the last rank before the first
/// failure of p_(j) <= q j / m.
RejectionSet bhq_step_down(const std::vector<double>& pvalues, double q);

/// Compliance: R == 0, or every rejected p-value is at most cutoffs[R - 1].
bool is_compliant(const RejectionSet& rejections, const std::vector<double>& pvalues,
                  const std::vector<double>& cutoffs);

/// Strictly increasing log-scale cutoffs for PrivateBHq.
struct CutoffSchedule {
  std::vector<double> gammas;
};

/// gamma_j = log(q j / m) - eta sqrt(10 m' ln(1/delta)) ln(6 m' / q) / epsilon
/// for j = 1..m'.
CutoffSchedule gamma_cutoffs(double q, std::size_t m, const PrivacyBudget& budget, double eta);

/// Level inflation for the power regime: q' = q exp(24 eta sqrt(m' ln(1/delta))
/// ln(m) / epsilon). The underlying guarantee additionally assumes
/// q >= 6 m^-1.5 and nu <= q/m.
double inflate_q(double q, double eta, std::size_t m_prime, double delta, double epsilon,
                 std::size_t m);

struct PrivateBhqResult {
  RejectionSet rejections;
  std::vector<NoisyCandidate> candidates;  // peel output, selection order
  double threshold = 0.0;                  // max{gamma_j : noisy_(j) <= gamma_j}, -inf if none
};

/// Core PrivateBHq on precomputed truncated-log p-values: peel m' candidates
/// at scale lambda, then the threshold step-up rule over the cutoffs.
/// lambda == 0 is the non-private noise-off mode.
PrivateBhqResult private_bhq(const std::vector<double>& log_pvalues,
                             const CutoffSchedule& cutoffs, std::size_t m_prime,
                             double lambda, RngStream& rng);

enum class TestFamily { binomial, truncexp };

/// End-to-end PrivateBHq on a dataset: per-hypothesis p-values for the chosen
/// family, truncated logs at nu, peel with the budget's lambda, reject by the
/// gamma cutoffs for level q.
PrivateBhqResult private_bhq(const Dataset& dataset, TestFamily family, double q,
                             const PrivacyBudget& budget, double eta, double nu,
                             RngStream& rng);

}  // namespace privbhq
