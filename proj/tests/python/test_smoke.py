import math

import pytest

import barylab


def test_nodes_and_weights():
    f = barylab.chebyshev_nodes(2)
    assert f.nodes == [-1.0, 0.0, 1.0]
    assert barylab.salzer_weights(2).values == [0.5, -1.0, 0.5]
    w = barylab.lambda_weights(f)
    assert w.provenance == "numerical"
    assert len(w) == 3


def test_evaluation_reproduces_data():
    x = [-1.0, 0.0, 1.0]
    w = [0.5, -1.0, 0.5]
    assert barylab.eval_second_form(x, w, [1.0, 2.0, 3.0], 0.0) == 2.0
    assert barylab.eval_second_form(x, w, [0.0, 0.0, 1.0], 0.5) == pytest.approx(0.375)
    assert barylab.eval_lagrange_basis(x, w, 2, 0.5) == pytest.approx(0.375)
    with pytest.raises(barylab.PoleError):
        barylab.eval_second_form([0.0, 1.0], [1.0, 1.0], [1.0, 1.0], 0.5)


def test_lebesgue_and_bounds():
    f = barylab.chebyshev_nodes(100)
    lam = barylab.lebesgue_constant(f, barylab.salzer_weights(100), 6400)
    assert 1.0 <= lam <= 0.67667 * math.log(100) + 1.0236
    assert barylab.corollary_salzer_bound(100, 2.3e-16) == pytest.approx(6.48e-11, rel=2e-3)
    assert barylab.corollary_numerical_bound(100, 2.3e-16) == pytest.approx(4.424e-13, rel=1e-3)
    r = barylab.theorem_main_bounds(10, 2.3e-16, 0.0, 0.0, 1.0)
    assert r["hypothesis_ok"] and r["Z"] == pytest.approx(2.76e-15, rel=1e-4)
    assert not barylab.theorem_main_bounds(10, 2.3e-16, 0.0, 1.0, 2.0)["hypothesis_ok"]
    beta, _ = barylab.theorem_delta_bounds(1e-3, 0.0, 2.0)
    assert beta == pytest.approx(3.006e-3, rel=1e-4)


def test_perturbation_measures():
    ref = barylab.custom_nodes([0.0, 1.0, 2.0], 0.0, 2.0)
    pert = barylab.custom_nodes([0.0, 1.0, 2.0002], 0.0, 2.0002)
    assert barylab.compute_delta(ref, pert) == pytest.approx(2.0e-4, rel=1e-3)
    f = barylab.chebyshev_nodes(20)
    w = barylab.lambda_weights(f, extended=True)
    assert max(abs(z) for z in barylab.compute_zeta(w, w)) == 0.0
    moved = barylab.perturb_nodes(f, 1e-9, 7)
    assert barylab.perturb_nodes(f, 1e-9, 7).nodes == moved.nodes


def test_small_table_and_fit():
    rows = barylab.run_table([20, 40, 80], "numerical", trial_count=20)
    assert [r["n"] for r in rows] == [20, 40, 80]
    for r in rows:
        assert r["beta"] > 0 and r["ratio"] == pytest.approx(r["beta"] / r["zeta_inf"])
    fit = barylab.fit_loglog(rows, "zeta")
    assert 0.0 < fit["slope"] < 2.0
