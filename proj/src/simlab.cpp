#include "privbhq/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "privbhq/procedures.hpp"
#include "privbhq/pvalues.hpp"
#include "privbhq/special.hpp"

namespace privbhq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GeneratedStats gen_normal_example(std::size_t m, std::size_t m1, double mu, RngStream& rng) {
  if (m1 == 0 || m1 >= m) {
    throw std::invalid_argument("gen_normal_example: m1 in {0, m} makes the covariance degenerate");
  }
  const std::size_t m0 = m - m1;
  const double r0 = 1.0 / std::sqrt(2.0 * static_cast<double>(m0));
  const double r1 = 1.0 / std::sqrt(2.0 * static_cast<double>(m1));
  // w+ / w- load r0 on null coordinates and +-r1 on non-null ones; the
  // covariance square root is I - P+ + (sqrt(2) - 1) P-.
  GeneratedStats out;
  out.stats.resize(m);
  out.is_null.resize(m);
  double dot_plus = 0.0;
  double dot_minus = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double z = rng.normal();
    out.stats[i] = z;
    const bool null_i = i >= m1;
    out.is_null[i] = null_i ? 1 : 0;
    if (null_i) {
      dot_plus += r0 * z;
      dot_minus += r0 * z;
    } else {
      dot_plus += r1 * z;
      dot_minus -= r1 * z;
    }
  }
  const double c_minus = (std::sqrt(2.0) - 1.0) * dot_minus;
  for (std::size_t i = 0; i < m; ++i) {
    if (out.is_null[i]) {
      out.stats[i] += -dot_plus * r0 + c_minus * r0;
    } else {
      out.stats[i] += -dot_plus * r1 - c_minus * r1 + mu;
    }
  }
  return out;
}

GeneratedStats gen_student_example(std::size_t m, std::size_t m1, double mu, std::size_t n,
                                   RngStream& rng) {
  if (n < 2) throw std::invalid_argument("gen_student_example: n must be at least 2");
  std::vector<double> sum(m, 0.0);
  std::vector<double> sumsq(m, 0.0);
  GeneratedStats out;
  for (std::size_t l = 0; l < n; ++l) {
    GeneratedStats draw = gen_normal_example(m, m1, mu, rng);
    for (std::size_t i = 0; i < m; ++i) {
      sum[i] += draw.stats[i];
      sumsq[i] += draw.stats[i] * draw.stats[i];
    }
    if (l + 1 == n) out.is_null = std::move(draw.is_null);
  }
  out.stats.resize(m);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i) {
    const double mean = sum[i] / nd;
    double var = (sumsq[i] - nd * mean * mean) / (nd - 1.0);
    if (var <= 0.0) {
      out.stats[i] = mean >= 0.0 ? kInf : -kInf;  // probability-zero event
      continue;
    }
    out.stats[i] = std::sqrt(nd) * mean / std::sqrt(var);
  }
  return out;
}

GeneratedStats gen_block_example(std::size_t m_pairs, double mu_tilde, double rho,
                                 RngStream& rng) {
  if (m_pairs == 0) throw std::invalid_argument("gen_block_example: need at least one pair");
  if (std::fabs(rho) > 1.0) throw std::invalid_argument("gen_block_example: |rho| > 1");
  const double tail = std::sqrt(1.0 - rho * rho);
  GeneratedStats out;
  out.stats.resize(2 * m_pairs);
  out.is_null.resize(2 * m_pairs);
  for (std::size_t i = 0; i < m_pairs; ++i) {
    const double z = rng.normal();
    const double zp = rng.normal();
    out.stats[2 * i] = z;
    out.is_null[2 * i] = 1;
    out.stats[2 * i + 1] = mu_tilde + rho * z + tail * zp;
    out.is_null[2 * i + 1] = 0;
  }
  return out;
}

std::vector<double> z_pvalues(const std::vector<double>& stats, Alternative alternative) {
  std::vector<double> p(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    p[i] = alternative == Alternative::one_sided
               ? normal_sf(stats[i])
               : 2.0 * normal_sf(std::fabs(stats[i]));
    if (p[i] > 1.0) p[i] = 1.0;
  }
  return p;
}

std::vector<double> t_pvalues(const std::vector<double>& stats, std::size_t df,
                              Alternative alternative, double degenerate_p,
                              std::size_t* degenerate_count) {
  if (df == 0) throw std::invalid_argument("t_pvalues: df must be positive");
  std::vector<double> p(stats.size());
  std::size_t degenerate = 0;
  const double dfd = static_cast<double>(df);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (!std::isfinite(stats[i])) {
      p[i] = degenerate_p;
      ++degenerate;
      continue;
    }
    p[i] = alternative == Alternative::one_sided
               ? student_t_sf(stats[i], dfd)
               : 2.0 * student_t_sf(std::fabs(stats[i]), dfd);
    if (p[i] > 1.0) p[i] = 1.0;
  }
  if (degenerate_count) *degenerate_count += degenerate;
  return p;
}

AdversarialOutcome adversarial_compliant(std::size_t m, std::size_t m0, std::size_t k,
                                         double q, RngStream& rng) {
  if (k < 2) throw std::invalid_argument("adversarial_compliant: k must be at least 2");
  if (m0 < k) throw std::invalid_argument("adversarial_compliant: m0 must be at least k");
  if (m0 >= m) throw std::invalid_argument("adversarial_compliant: m0 must be below m");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("adversarial_compliant: q outside (0, 1)");

  // Order statistics of m0 uniforms via exponential spacings.
  std::vector<double> order(m0);
  double total = 0.0;
  for (auto& u : order) {
    u = rng.exponential();
    total += u;
  }
  total += rng.exponential();
  double acc = 0.0;
  for (auto& u : order) {
    acc += u;
    u = acc / total;
  }

  // The adversary maximizes j / U_(j) over the ranks it can actually realize:
  // rank j needs max{ceil(m U_(j) / q) - j, 0} zero p-values, and only m - m0
  // are available. A replicate with no realizable rank is infeasible.
  const double zero_budget = static_cast<double>(m - m0);
  std::size_t j_star = 0;
  double best = 0.0;
  for (std::size_t j = k; j <= m0; ++j) {
    const double jd = static_cast<double>(j);
    const double needed_j = std::ceil(static_cast<double>(m) * order[j - 1] / q) - jd;
    if (needed_j > zero_budget) continue;
    const double v = jd / order[j - 1];
    if (v > best) {
      best = v;
      j_star = j;
    }
  }

  AdversarialOutcome out;
  if (j_star == 0) {
    out.feasible = false;
    return out;
  }
  const double u_star = order[j_star - 1];
  out.j_star = j_star;
  out.u_j_star = u_star;

  const double needed_raw =
      std::ceil(static_cast<double>(m) * u_star / q) - static_cast<double>(j_star);
  const std::size_t needed = needed_raw > 0.0 ? static_cast<std::size_t>(needed_raw) : 0;

  out.record.V = j_star;
  out.record.R = std::min(j_star + needed, m);

  // Hard compliance assertion on the explicit construction: nulls carry the
  // order statistics, false nulls carry zeros.
  std::vector<double> pvalues(m, 0.0);
  std::copy(order.begin(), order.end(), pvalues.begin());
  RejectionSet rej;
  rej.rejected.reserve(out.record.R);
  for (std::size_t j = 1; j <= j_star; ++j) rej.rejected.push_back(j);
  for (std::size_t j = 0; j < needed; ++j) rej.rejected.push_back(m0 + 1 + j);
  out.compliant = is_compliant(rej, pvalues, bh_cutoffs(q, m));
  return out;
}

namespace {

double pi0_of(const ExperimentConfig& config, double grid_value) {
  switch (config.example) {
    case ExampleKind::normal:
    case ExampleKind::student:
      return (static_cast<double>(config.m) - grid_value) / static_cast<double>(config.m);
    case ExampleKind::block:
      return 0.5;
    case ExampleKind::adversarial:
      return grid_value / static_cast<double>(config.m);
  }
  return 0.0;
}

std::string example_name(ExampleKind kind) {
  switch (kind) {
    case ExampleKind::normal: return "normal";
    case ExampleKind::student: return "student";
    case ExampleKind::block: return "block";
    case ExampleKind::adversarial: return "adversarial";
  }
  return "?";
}

double bound_for(std::size_t k, double pi0, double q) {
  if (k == 1) return q;  // nominal level; no C_k bound exists for k = 1
  try {
    return bound_fdr_k(k, pi0, q);
  } catch (const std::invalid_argument&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  if (config.reps == 0) throw std::invalid_argument("run_experiment: reps must be positive");
  if (config.grid.empty()) throw std::invalid_argument("run_experiment: empty grid");

  std::vector<ExperimentRow> rows;
  const std::string alt =
      config.alternative == Alternative::one_sided ? "one-sided" : "two-sided";

  for (std::size_t point = 0; point < config.grid.size(); ++point) {
    const double gv = config.grid[point];
    const double pi0 = pi0_of(config, gv);

    std::vector<std::size_t> ks = config.ks;
    if (config.example == ExampleKind::adversarial) {
      std::erase_if(ks, [](std::size_t k) { return k < 2; });
    }

    std::vector<std::vector<double>> fdp(ks.size(), std::vector<double>(config.reps, 0.0));
    std::vector<std::size_t> infeasible(ks.size(), 0);

    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      if (config.example == ExampleKind::adversarial) {
        for (std::size_t ki = 0; ki < ks.size(); ++ki) {
          RngStream rng(derive_seed(config.seed, point, rep, ks[ki]));
          const AdversarialOutcome o = adversarial_compliant(
              config.m, static_cast<std::size_t>(gv), ks[ki], config.q, rng);
          if (!o.feasible) {
            ++infeasible[ki];
            fdp[ki][rep] = std::numeric_limits<double>::quiet_NaN();
            continue;
          }
          if (!o.compliant) {
            throw std::runtime_error("run_experiment: adversarial construction non-compliant");
          }
          fdp[ki][rep] = o.record.fdp_k(ks[ki]);
        }
        continue;
      }

      RngStream rng(derive_seed(config.seed, point, rep));
      GeneratedStats gen;
      std::vector<double> pvalues;
      switch (config.example) {
        case ExampleKind::normal:
          gen = gen_normal_example(config.m, static_cast<std::size_t>(gv), config.mu, rng);
          pvalues = z_pvalues(gen.stats, config.alternative);
          break;
        case ExampleKind::student:
          gen = gen_student_example(config.m, static_cast<std::size_t>(gv), config.mu,
                                    config.n, rng);
          pvalues = t_pvalues(gen.stats, config.n - 1, config.alternative,
                              default_nu(config.m));
          break;
        case ExampleKind::block:
          gen = gen_block_example(config.m, config.mu_tilde, gv, rng);
          pvalues = z_pvalues(gen.stats, config.alternative);
          break;
        case ExampleKind::adversarial:
          break;  // handled above
      }
      RejectionSet rej = bhq_step_up(pvalues, config.q);
      rej.count_false_rejections(gen.is_null);
      const FdpRecord record{*rej.V, rej.R()};
      for (std::size_t ki = 0; ki < ks.size(); ++ki) fdp[ki][rep] = record.fdp_k(ks[ki]);
    }

    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      // Drop infeasible adversarial replicates (NaN markers).
      std::vector<double>& xs = fdp[ki];
      std::erase_if(xs, [](double x) { return std::isnan(x); });
      const MeanStderr ms = mean_stderr(xs);
      ExperimentRow row;
      row.example = example_name(config.example);
      row.m = config.m;
      row.m1_or_rho = gv;
      row.alternative = alt;
      row.k = ks[ki];
      row.fdr_hat = ms.mean;
      row.std_error = ms.std_error;
      row.bound = bound_for(ks[ki], pi0, config.q);
      row.infeasible = infeasible[ki];
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace privbhq
