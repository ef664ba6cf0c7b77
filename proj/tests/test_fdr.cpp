#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "privbhq/fdr.hpp"

using namespace privbhq;

TEST_CASE("FdpRecord: truncated proportions") {
  const FdpRecord r{2, 4};
  CHECK(r.fdp_k(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.fdp_k(3) == 0.0);  // V < k
  CHECK(r.fdp_upper_k(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.fdp_upper_k(5) == 0.0);  // R < k
  const FdpRecord one{1, 4};
  CHECK(one.fdp_k(2) == 0.0);
  CHECK(one.fdp_upper_k(2) == doctest::Approx(0.25).epsilon(1e-15));
  const FdpRecord empty{0, 0};
  CHECK(empty.fdp_k(1) == 0.0);
  CHECK(empty.fdp_upper_k(1) == 0.0);
}

TEST_CASE("estimate_ck rejects k < 2") {
  CHECK_THROWS(estimate_ck(std::size_t{1}, 100, 1000, 1));
  CHECK_THROWS(estimate_ck(std::vector<std::size_t>{2, 1}, 100, 1000, 1));
}

TEST_CASE("estimate_ck: coarse run brackets the known constant") {
  const CkEstimate e = estimate_ck(std::size_t{2}, 4000, 20000, 20240817);
  CHECK(e.k == 2);
  CHECK(e.reps == 4000);
  CHECK(e.mean > 2.1);
  CHECK(e.mean < 2.7);
  CHECK(e.std_error > 0.0);
  CHECK(e.std_error < 0.1);
}

TEST_CASE("estimate_ck: shared-path batch is decreasing in k and at least 1") {
  const auto es = estimate_ck({2, 5, 25}, 3000, 20000, 5);
  REQUIRE(es.size() == 3);
  CHECK(es[0].k == 2);
  CHECK(es[0].mean > es[1].mean);
  CHECK(es[1].mean > es[2].mean);
  for (const auto& e : es) CHECK(e.mean >= 1.0);
  // Determinism: same seed, same numbers.
  const auto again = estimate_ck({2, 5, 25}, 3000, 20000, 5);
  for (std::size_t i = 0; i < es.size(); ++i) {
    CHECK(es[i].mean == again[i].mean);
    CHECK(es[i].std_error == again[i].std_error);
  }
  // A k in the batch matches the scalar call on the same seed.
  const auto solo = estimate_ck(std::size_t{5}, 3000, 20000, 5);
  CHECK(solo.mean == es[1].mean);
}

TEST_CASE("estimate_ck_finite: n = k = 2 closed form") {
  // With two uniforms, max_{2<=j<=2} j/(2 U_(2)) = 1/U_(2) = 1/max(U1, U2),
  // whose mean is 2 (density 2u on (0,1) for the max; E[1/max] = 2).
  const CkEstimate e = estimate_ck_finite(2, 2, 40000, 99);
  CHECK(std::fabs(e.mean - 2.0) <= 3.0 * e.std_error);
}

TEST_CASE("estimate_ck_finite: grows with n toward the infinite-path constant") {
  const auto e5 = estimate_ck_finite(2, 5, 20000, 31);
  const auto e50 = estimate_ck_finite(2, 50, 20000, 32);
  const auto e500 = estimate_ck_finite(2, 500, 20000, 33);
  const auto se = [](const CkEstimate& a, const CkEstimate& b) {
    return 3.0 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  };
  CHECK(e5.mean <= e50.mean + se(e5, e50));
  CHECK(e50.mean <= e500.mean + se(e50, e500));
  CHECK(e500.mean < 2.7);
}

TEST_CASE("ck_reference table") {
  CHECK(ck_reference(2) == doctest::Approx(2.41).epsilon(1e-12));
  CHECK(ck_reference(3) == doctest::Approx(1.85).epsilon(1e-12));
  CHECK(ck_reference(4) == doctest::Approx(1.65).epsilon(1e-12));
  CHECK(ck_reference(5) == doctest::Approx(1.54).epsilon(1e-12));
  CHECK(ck_reference(10) == doctest::Approx(1.32).epsilon(1e-12));
  CHECK(ck_reference(25) == doctest::Approx(1.18).epsilon(1e-12));
  CHECK_THROWS(ck_reference(7));
}

TEST_CASE("FDR_k bounds") {
  CHECK(bound_fdr_k(2.41, 1.0, 0.1) == doctest::Approx(0.241).epsilon(1e-12));
  CHECK(bound_fdr_k(std::size_t{2}, 0.5, 0.1) == doctest::Approx(0.1205).epsilon(1e-12));
  CHECK(bound_fdr_k(2.41, 0.0, 0.1) == 0.0);
  CHECK_THROWS(bound_fdr_k(std::size_t{1}, 1.0, 0.1));
}

TEST_CASE("FDR^k bound") {
  CHECK(bound_fdr_upper_k(1, 0.1) == doctest::Approx(0.7324555320336759).epsilon(1e-12));
  // Decreasing in k, approaching q.
  double prev = bound_fdr_upper_k(1, 0.1);
  for (std::size_t k : {2u, 5u, 25u, 1000u}) {
    const double b = bound_fdr_upper_k(k, 0.1);
    CHECK(b < prev);
    CHECK(b > 0.1);
    prev = b;
  }
  // For k >= 2 the simple bound dominates the truncated-FDR bound at pi0 = 1.
  for (std::size_t k : {2u, 5u, 25u}) {
    CHECK(bound_fdr_upper_k(k, 0.1) >= bound_fdr_k(k, 1.0, 0.1) - 1e-12);
  }
}
