import json
import math

import pytest

import curvgauge as cg


def test_constant_curvature_invariants():
    inv = cg.invariants(cg.constant_curvature(4, 1.0))
    assert inv["scalar"] == pytest.approx(12.0)
    assert inv["ric_norm_sq"] == pytest.approx(36.0)
    assert inv["weyl_norm_sq"] == pytest.approx(0.0, abs=1e-14)


def test_claim_bound_and_margin():
    assert cg.claim_bound(0.0)["bound"] == pytest.approx(3.0)
    assert cg.claim_bound(1.0)["bound"] == pytest.approx(555.02900397563425, rel=1e-13)
    amb = cg.make_ambient_restriction(cg.constant_curvature(4, 1.0))
    r = cg.claim_margin(amb, cg.spectrum_from_mu(0.0, [0, 0, 0, 0]))
    assert r["margin"] == pytest.approx(0.0, abs=1e-12)
    assert r["case"] == "I"


def test_errors_are_raised():
    amb = cg.make_ambient_restriction(cg.constant_curvature(4, 1.0))
    with pytest.raises(cg.CurvgaugeError):
        cg.claim_margin(amb, cg.spectrum_from_mu(0.0, [2, -2, 1, -1]))
    with pytest.raises(cg.CurvgaugeError):
        cg.make_curvature_tensor(4, [0.0] * 10)


def test_warped_and_lemma():
    assert cg.kappa("sin", 1.0) == pytest.approx((1.0, 1.0))
    amb = cg.warped_ambient(0.0, 1.0, [1, 0, 0, 0])
    assert amb.sigma == pytest.approx(6.0)
    assert cg.lcf_classify([1, 1, 1, -3], 1e-12) == (True, pytest.approx(1.0), 4)
    chain = cg.rotsym_margin(1.0, 1.0, [0, 0, 0, 0], 0.0, 0.5)
    assert chain["q"] == pytest.approx(3 * 1.25**2)


def test_slice_and_epsilon0():
    r = cg.integrate_slice("sin", math.pi / 2)
    assert r["gbc_integral"] == pytest.approx(8 * math.pi**2)
    assert r["slack"] == pytest.approx(0.0, abs=1e-9)
    root, closed, published = cg.epsilon0_threshold()
    assert root == pytest.approx(closed, abs=1e-10)
    assert published == pytest.approx(0.9254223147, rel=1e-9)


def test_search_and_cli():
    rep = cg.maximize_margin(family="warped", samples=2000, restarts=2, seed=3)
    assert rep["max_margin"] <= 1e-8
    assert sum(rep["case_histogram"].values()) + rep["rejected"] == 2000
    code, out, log = cg.run_cli(["epsilon0"])
    assert code == 0
    assert json.loads(out)["command"] == "epsilon0"
    assert cg.run_cli(["identities", "--samples", "0"])[0] == 2
