// privbhq: differentially private FDR control toolkit CLI.
//
// Subcommands: bhq, private-bhq, budget, ck-estimate, simulate. All randomized
// subcommands take --seed and echo the seed to stderr so any run can be
// reproduced byte for byte. CSV output goes to --out or stdout.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "privbhq/csvio.hpp"
#include "privbhq/dataset.hpp"
#include "privbhq/dp.hpp"
#include "privbhq/fdr.hpp"
#include "privbhq/procedures.hpp"
#include "privbhq/pvalues.hpp"
#include "privbhq/simlab.hpp"

namespace {

using namespace privbhq;

std::uint64_t resolve_seed(std::uint64_t seed, bool seed_given) {
  if (!seed_given) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  }
  std::cerr << "seed," << seed << '\n';
  return seed;
}

class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void print_rejections(std::ostream& out, const RejectionSet& rej) {
  out << "R," << rej.R() << '\n';
  out << "index\n";
  for (std::size_t idx : rej.rejected) out << idx << '\n';
}

int run_bhq(const std::string& input, double q, const std::string& mode,
            const std::string& out_path) {
  const PValueTable table = read_pvalues_csv_file(input);
  RejectionSet rej =
      mode == "step-up" ? bhq_step_up(table.p, q) : bhq_step_down(table.p, q);
  if (table.is_null) rej.count_false_rejections(*table.is_null);
  OutputSink sink(out_path);
  print_rejections(sink.stream(), rej);
  if (rej.V) sink.stream() << "V," << *rej.V << '\n';
  return 0;
}

int run_private_bhq(const std::string& input, const std::string& test, double epsilon,
                    double delta, std::size_t m_prime, double q, double nu,
                    std::uint64_t seed, bool seed_given, const std::string& out_path) {
  const Dataset ds = Dataset::from_csv_file(input);
  if (nu <= 0.0) nu = default_nu(ds.m);
  const TestFamily family = test == "binomial" ? TestFamily::binomial : TestFamily::truncexp;
  const SensitivityProfile profile =
      family == TestFamily::binomial ? sensitivity_scan_binomial(ds.n, nu)
                                     : sensitivity_scan_truncexp(ds.n, ds.bound, nu);
  const PrivacyBudget budget = calibrate(epsilon, delta, m_prime, profile.eta);
  RngStream rng(resolve_seed(seed, seed_given));
  const PrivateBhqResult result = private_bhq(ds, family, q, budget, profile.eta, nu, rng);
  OutputSink sink(out_path);
  std::ostream& out = sink.stream();
  out << "eta," << format_double(profile.eta) << '\n';
  out << "lambda," << format_double(budget.lambda) << '\n';
  print_rejections(out, result.rejections);
  return 0;
}

int run_budget(double epsilon, double delta, std::size_t m_prime, double eta, double q,
               std::size_t m, const std::string& out_path) {
  const PrivacyBudget budget = calibrate(epsilon, delta, m_prime, eta);
  OutputSink sink(out_path);
  std::ostream& out = sink.stream();
  out << "epsilon,delta,m_prime,eta,lambda,in_theorem_regime\n";
  out << format_double(budget.epsilon) << ',' << format_double(budget.delta) << ','
      << budget.m_prime << ',' << format_double(eta) << ','
      << format_double(budget.lambda) << ',' << (budget.in_theorem_regime ? 1 : 0) << '\n';
  if (m > 0) {
    const CutoffSchedule sched = gamma_cutoffs(q, m, budget, eta);
    out << "j,gamma\n";
    for (std::size_t j = 1; j <= sched.gammas.size(); ++j) {
      out << j << ',' << format_double(sched.gammas[j - 1]) << '\n';
    }
  }
  return 0;
}

int run_ck_estimate(const std::vector<std::size_t>& ks, std::size_t reps, std::size_t jmax,
                    std::uint64_t seed, bool seed_given, const std::string& out_path) {
  const std::uint64_t s = resolve_seed(seed, seed_given);
  const auto estimates = estimate_ck(ks, reps, jmax, s);
  OutputSink sink(out_path);
  std::ostream& out = sink.stream();
  out << "k,mean,stderr,reps,jmax\n";
  for (const auto& e : estimates) {
    out << e.k << ',' << format_double(e.mean) << ',' << format_double(e.std_error) << ','
        << e.reps << ',' << e.j_max << '\n';
  }
  return 0;
}

int run_simulate(const ExperimentConfig& config, const std::string& out_path) {
  const auto rows = run_experiment(config);
  OutputSink sink(out_path);
  std::ostream& out = sink.stream();
  out << "example,m,m1_or_rho,alternative,k,fdr_hat,stderr,bound,infeasible\n";
  for (const auto& row : rows) {
    out << row.example << ',' << row.m << ',' << format_double(row.m1_or_rho) << ','
        << row.alternative << ',' << row.k << ',' << format_double(row.fdr_hat) << ','
        << format_double(row.std_error) << ',' << format_double(row.bound) << ','
        << row.infeasible << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PrivateBHq: differentially private FDR control toolkit"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0 = auto)");

  // bhq
  auto* bhq = app.add_subcommand("bhq", "BHq step-up / step-down on a p-value CSV");
  std::string bhq_input, bhq_mode = "step-up", bhq_out;
  double bhq_q = 0.1;
  bhq->add_option("--input", bhq_input, "CSV with a `p` column")->required();
  bhq->add_option("--q", bhq_q, "FDR target level in (0, 1)")->required();
  bhq->add_option("--mode", bhq_mode, "step-up | step-down")
      ->check(CLI::IsMember({"step-up", "step-down"}));
  bhq->add_option("--out", bhq_out, "Output CSV path (default stdout)");

  // private-bhq
  auto* pbhq = app.add_subcommand("private-bhq", "PrivateBHq on a dataset CSV");
  std::string pb_input, pb_test, pb_out;
  double pb_eps = 0.5, pb_delta = 0.1, pb_q = 0.1, pb_nu = 0.0;
  std::size_t pb_mprime = 10;
  std::uint64_t pb_seed = 0;
  pbhq->add_option("--input", pb_input, "Dataset CSV")->required();
  pbhq->add_option("--test", pb_test, "binomial | truncexp")
      ->required()
      ->check(CLI::IsMember({"binomial", "truncexp"}));
  pbhq->add_option("--epsilon", pb_eps, "Privacy parameter epsilon")->required();
  pbhq->add_option("--delta", pb_delta, "Privacy parameter delta (> 0)")->required();
  pbhq->add_option("--mprime", pb_mprime, "Number of peel invocations")->required();
  pbhq->add_option("--q", pb_q, "FDR target level")->required();
  pbhq->add_option("--nu", pb_nu, "Truncation floor (default m^-1.5)");
  auto* pb_seed_opt = pbhq->add_option("--seed", pb_seed, "Master seed");
  pbhq->add_option("--out", pb_out, "Output CSV path (default stdout)");

  // budget
  auto* budget = app.add_subcommand("budget", "Laplace-scale calibration report");
  double bu_eps = 0.0, bu_delta = 0.0, bu_eta = 0.0, bu_q = 0.1;
  std::size_t bu_mprime = 0, bu_m = 0;
  std::string bu_out;
  budget->add_option("--epsilon", bu_eps)->required();
  budget->add_option("--delta", bu_delta)->required();
  budget->add_option("--mprime", bu_mprime)->required();
  budget->add_option("--eta", bu_eta)->required();
  budget->add_option("--q", bu_q, "Level for the gamma-cutoff table");
  budget->add_option("--m", bu_m, "Hypothesis count for the gamma table (0 = skip table)");
  budget->add_option("--out", bu_out);

  // ck-estimate
  auto* ck = app.add_subcommand("ck-estimate", "Monte Carlo C_k estimation");
  std::vector<std::size_t> ck_ks;
  std::size_t ck_reps = 10000, ck_jmax = 100000;
  std::uint64_t ck_seed = 0;
  std::string ck_out;
  ck->add_option("--k", ck_ks, "Comma-separated k list (each >= 2)")
      ->required()
      ->delimiter(',');
  ck->add_option("--reps", ck_reps, "Replicates (default 10000)");
  ck->add_option("--jmax", ck_jmax, "Path length (default 100000)");
  auto* ck_seed_opt = ck->add_option("--seed", ck_seed, "Master seed");
  ck->add_option("--out", ck_out);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Experiment runner for the BHq examples");
  std::string sim_example, sim_alt = "one", sim_out;
  ExperimentConfig config;
  std::vector<double> sim_m1, sim_rho, sim_m0;
  std::uint64_t sim_seed = 0;
  sim->add_option("--example", sim_example, "normal | student | block | adversarial")
      ->required()
      ->check(CLI::IsMember({"normal", "student", "block", "adversarial"}));
  sim->add_option("--m", config.m, "Hypotheses (block: pairs; adversarial: total)");
  sim->add_option("--m1", sim_m1, "Non-null counts grid")->delimiter(',');
  sim->add_option("--rho", sim_rho, "Within-block correlations grid")->delimiter(',');
  sim->add_option("--m0", sim_m0, "True-null counts grid (adversarial)")->delimiter(',');
  sim->add_option("--q", config.q, "FDR target level");
  sim->add_option("--reps", config.reps, "Replicates per grid point");
  sim->add_option("--alternative", sim_alt, "one | two")
      ->check(CLI::IsMember({"one", "two"}));
  sim->add_option("--mu", config.mu, "Effect size (normal/student)");
  sim->add_option("--mu-tilde", config.mu_tilde, "Effect size (block)");
  sim->add_option("--n", config.n, "Sample size (student)");
  sim->add_option("--fdrk", config.ks, "k list for FDR_k")->delimiter(',');
  auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "Master seed");
  sim->add_option("--out", sim_out, "results.csv path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bhq) return run_bhq(bhq_input, bhq_q, bhq_mode, bhq_out);
    if (*pbhq) {
      return run_private_bhq(pb_input, pb_test, pb_eps, pb_delta, pb_mprime, pb_q, pb_nu,
                             pb_seed, pb_seed_opt->count() > 0, pb_out);
    }
    if (*budget) return run_budget(bu_eps, bu_delta, bu_mprime, bu_eta, bu_q, bu_m, bu_out);
    if (*ck) {
      return run_ck_estimate(ck_ks, ck_reps, ck_jmax, ck_seed, ck_seed_opt->count() > 0,
                             ck_out);
    }
    if (*sim) {
      if (sim_example == "normal") {
        config.example = ExampleKind::normal;
        config.grid = sim_m1;
      } else if (sim_example == "student") {
        config.example = ExampleKind::student;
        config.grid = sim_m1;
      } else if (sim_example == "block") {
        config.example = ExampleKind::block;
        config.grid = sim_rho;
      } else {
        config.example = ExampleKind::adversarial;
        config.grid = sim_m0;
      }
      config.alternative = sim_alt == "one" ? Alternative::one_sided : Alternative::two_sided;
      config.seed = resolve_seed(sim_seed, sim_seed_opt->count() > 0);
      return run_simulate(config, sim_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
