"""Smoke tests for the privatebhq extension module."""

import math

import privatebhq as pb


def test_bhq_step_up():
    rej = pb.bhq_step_up([0.01, 0.02, 0.5], 0.1)
    assert rej.rejected == [1, 2]
    assert rej.R == 2


def test_step_down_diverges_from_step_up():
    p = [0.05, 0.055, 0.06]
    assert pb.bhq_step_down(p, 0.1).R == 0
    assert pb.bhq_step_up(p, 0.1).R == 3


def test_compliance():
    rej = pb.bhq_step_up([0.01, 0.02, 0.5], 0.1)
    assert pb.is_compliant(rej, [0.01, 0.02, 0.5], pb.bh_cutoffs(0.1, 3))


def test_binomial_pvalue():
    ds = pb.Dataset(4, 1, pb.Domain.binary, 0.0, [1.0, 1.0, 0.0, 1.0])
    assert math.isclose(pb.binomial_pvalue(ds, 1), 5.0 / 16.0, rel_tol=1e-12)


def test_truncexp_tail():
    assert pb.truncexp_tail(3, 1.0, 0.0) == 1.0
    assert math.isclose(
        pb.truncexp_tail(2, 1.0, 1.0), 0.33869688733846589, rel_tol=1e-2
    )


def test_sensitivity_and_calibration():
    prof = pb.sensitivity_scan_binomial(4, 0.05)
    assert math.isclose(prof.eta, math.log(5.0), rel_tol=1e-12)
    budget = pb.calibrate(0.5, 0.1, 10, 0.01)
    assert math.isclose(budget.lambda_, 0.30348542587702926, rel_tol=1e-9)
    assert budget.in_theorem_regime


def test_advanced_composition():
    eps, delta = pb.advanced_composition(0.1, 0.0, 10, 0.01)
    assert math.isclose(eps, 1.0648761005132639, rel_tol=1e-9)
    assert math.isclose(delta, 0.01)


def test_private_min_and_peel():
    rng = pb.RngStream(1)
    c = pb.private_min([3.0, 1.0, 2.0], 0.0, 1.0, rng)
    assert c.index == 2
    cands = pb.peel([5.0, 1.0, 3.0], 2, 0.0, rng)
    assert [c.index for c in cands] == [2, 3]


def test_private_bhq_end_to_end():
    rng = pb.RngStream(11)
    values = [1.0 if (r + c) % 2 else 0.0 for r in range(20) for c in range(5)]
    ds = pb.Dataset(20, 5, pb.Domain.binary, 0.0, values)
    prof = pb.sensitivity_scan_binomial(20, pb.default_nu(5))
    budget = pb.calibrate(0.5, 0.1, 3, prof.eta)
    res = pb.private_bhq(
        ds, pb.TestFamily.binomial, 0.1, budget, prof.eta, pb.default_nu(5), rng
    )
    assert res.rejections.R <= 3
    assert len(res.candidates) == 3


def test_ck_estimation():
    est = pb.estimate_ck(2, 500, 2000, 7)
    assert 1.5 < est.mean < 3.5
    again = pb.estimate_ck(2, 500, 2000, 7)
    assert est.mean == again.mean
    fin = pb.estimate_ck_finite(2, 2, 5000, 9)
    assert abs(fin.mean - 2.0) < 5 * fin.std_error + 0.05
    assert pb.ck_reference(2) == 2.41
    assert math.isclose(pb.bound_fdr_upper_k(1, 0.1), 0.7324555320336759)


def test_gamma_cutoffs():
    budget = pb.calibrate(0.5, 0.1, 10, 0.01)
    gammas = pb.gamma_cutoffs(0.1, 100, budget, 0.01)
    assert len(gammas) == 10
    assert math.isclose(gammas[0], -8.849130199700808, rel_tol=1e-9)
    assert all(b > a for a, b in zip(gammas, gammas[1:]))
