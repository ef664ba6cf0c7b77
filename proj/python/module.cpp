#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "privbhq/dataset.hpp"
#include "privbhq/dp.hpp"
#include "privbhq/fdr.hpp"
#include "privbhq/procedures.hpp"
#include "privbhq/pvalues.hpp"
#include "privbhq/random.hpp"
#include "privbhq/simlab.hpp"

namespace py = pybind11;
using namespace privbhq;

PYBIND11_MODULE(privatebhq, m) {
  m.doc() = "Differentially private FDR control: BHq variants, the peeling "
            "mechanism, sensitivity scans, and Monte Carlo C_k estimation.";

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", &RngStream::uniform)
      .def("exponential", &RngStream::exponential)
      .def("normal", &RngStream::normal)
      .def("laplace", &RngStream::laplace, py::arg("scale"));

  py::enum_<Domain>(m, "Domain")
      .value("binary", Domain::binary)
      .value("bounded_real", Domain::bounded_real);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](std::size_t n, std::size_t m_, Domain domain, double bound,
                       std::vector<double> values) {
             Dataset ds{n, m_, domain, bound, std::move(values)};
             ds.validate();
             return ds;
           }),
           py::arg("n"), py::arg("m"), py::arg("domain"), py::arg("bound"),
           py::arg("values"))
      .def_static("from_csv_file", &Dataset::from_csv_file)
      .def_readonly("n", &Dataset::n)
      .def_readonly("m", &Dataset::m)
      .def("column_sum", &Dataset::column_sum, py::arg("hypothesis"))
      .def("adjacent_to", &Dataset::adjacent_to);

  py::class_<SensitivityProfile>(m, "SensitivityProfile")
      .def_readonly("eta", &SensitivityProfile::eta)
      .def_readonly("nu", &SensitivityProfile::nu)
      .def_readonly("exact", &SensitivityProfile::exact)
      .def("admits", &SensitivityProfile::admits, py::arg("p1"), py::arg("p2"));

  m.def("binomial_pvalue", &binomial_pvalue, py::arg("dataset"), py::arg("hypothesis"));
  m.def("truncexp_pvalue", &truncexp_pvalue, py::arg("dataset"), py::arg("hypothesis"));
  m.def("truncexp_tail", &truncexp_tail, py::arg("n"), py::arg("A"), py::arg("t"));
  m.def("sensitivity_scan_binomial", &sensitivity_scan_binomial, py::arg("n"), py::arg("nu"));
  m.def("sensitivity_scan_truncexp", &sensitivity_scan_truncexp, py::arg("n"), py::arg("A"),
        py::arg("nu"), py::arg("grid") = 1000);
  m.def("log_truncate", &log_truncate, py::arg("p"), py::arg("nu"));
  m.def("default_nu", &default_nu, py::arg("m"), py::arg("c") = 0.5);

  py::class_<PrivacyBudget>(m, "PrivacyBudget")
      .def_readonly("epsilon", &PrivacyBudget::epsilon)
      .def_readonly("delta", &PrivacyBudget::delta)
      .def_readonly("m_prime", &PrivacyBudget::m_prime)
      .def_readonly("lambda_", &PrivacyBudget::lambda)
      .def_readonly("in_theorem_regime", &PrivacyBudget::in_theorem_regime);

  m.def("calibrate", &calibrate, py::arg("epsilon"), py::arg("delta"), py::arg("m_prime"),
        py::arg("eta"));
  m.def("advanced_composition", &advanced_composition, py::arg("epsilon_each"),
        py::arg("delta_each"), py::arg("l"), py::arg("delta_prime"));
  m.def("laplace_concentration_bound", &laplace_concentration_bound, py::arg("n"),
        py::arg("lambda_"), py::arg("alpha"));
  m.def("laplace_sample", &laplace_sample, py::arg("scale"), py::arg("rng"));

  py::class_<NoisyCandidate>(m, "NoisyCandidate")
      .def_readonly("index", &NoisyCandidate::index)
      .def_readonly("noisy_value", &NoisyCandidate::noisy_value);

  m.def(
      "private_min",
      [](const std::vector<double>& values, double sensitivity, double epsilon,
         RngStream& rng) { return private_min(values, sensitivity, epsilon, rng); },
      py::arg("values"), py::arg("sensitivity"), py::arg("epsilon"), py::arg("rng"));
  m.def("peel", &peel, py::arg("values"), py::arg("m_prime"), py::arg("lambda_"),
        py::arg("rng"));

  py::class_<RejectionSet>(m, "RejectionSet")
      .def_readonly("rejected", &RejectionSet::rejected)
      .def_readonly("V", &RejectionSet::V)
      .def_property_readonly("R", &RejectionSet::R);

  m.def("bh_cutoffs", &bh_cutoffs, py::arg("q"), py::arg("m"));
  m.def("bhq_step_up", &bhq_step_up, py::arg("pvalues"), py::arg("q"));
  m.def("bhq_step_down", &bhq_step_down, py::arg("pvalues"), py::arg("q"));
  m.def("is_compliant", &is_compliant, py::arg("rejections"), py::arg("pvalues"),
        py::arg("cutoffs"));
  m.def("gamma_cutoffs",
        [](double q, std::size_t m_, const PrivacyBudget& budget, double eta) {
          return gamma_cutoffs(q, m_, budget, eta).gammas;
        },
        py::arg("q"), py::arg("m"), py::arg("budget"), py::arg("eta"));
  m.def("inflate_q", &inflate_q, py::arg("q"), py::arg("eta"), py::arg("m_prime"),
        py::arg("delta"), py::arg("epsilon"), py::arg("m"));

  py::class_<PrivateBhqResult>(m, "PrivateBhqResult")
      .def_readonly("rejections", &PrivateBhqResult::rejections)
      .def_readonly("candidates", &PrivateBhqResult::candidates)
      .def_readonly("threshold", &PrivateBhqResult::threshold);

  py::enum_<TestFamily>(m, "TestFamily")
      .value("binomial", TestFamily::binomial)
      .value("truncexp", TestFamily::truncexp);

  m.def(
      "private_bhq",
      [](const Dataset& ds, TestFamily family, double q, const PrivacyBudget& budget,
         double eta, double nu, RngStream& rng) {
        return private_bhq(ds, family, q, budget, eta, nu, rng);
      },
      py::arg("dataset"), py::arg("family"), py::arg("q"), py::arg("budget"), py::arg("eta"),
      py::arg("nu"), py::arg("rng"));

  py::class_<CkEstimate>(m, "CkEstimate")
      .def_readonly("k", &CkEstimate::k)
      .def_readonly("mean", &CkEstimate::mean)
      .def_readonly("std_error", &CkEstimate::std_error)
      .def_readonly("reps", &CkEstimate::reps)
      .def_readonly("j_max", &CkEstimate::j_max);

  m.def("estimate_ck",
        py::overload_cast<std::size_t, std::size_t, std::size_t, std::uint64_t>(&estimate_ck),
        py::arg("k"), py::arg("reps"), py::arg("j_max"), py::arg("seed"));
  m.def("estimate_ck_many",
        py::overload_cast<const std::vector<std::size_t>&, std::size_t, std::size_t,
                          std::uint64_t>(&estimate_ck),
        py::arg("ks"), py::arg("reps"), py::arg("j_max"), py::arg("seed"));
  m.def("estimate_ck_finite", &estimate_ck_finite, py::arg("k"), py::arg("n"),
        py::arg("reps"), py::arg("seed"));
  m.def("ck_reference", &ck_reference, py::arg("k"));
  m.def("bound_fdr_k", py::overload_cast<double, double, double>(&bound_fdr_k),
        py::arg("ck"), py::arg("pi0"), py::arg("q"));
  m.def("bound_fdr_upper_k", &bound_fdr_upper_k, py::arg("k"), py::arg("q"));
}
