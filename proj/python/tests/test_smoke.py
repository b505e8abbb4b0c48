import json
import math

import pytest

import trife


def test_rational_lattice_closed_forms():
    w = trife.Weierstrass(0, 0)
    assert w.p(0.5) == pytest.approx(4.0, rel=1e-14)
    assert w.p(2j) == pytest.approx(-0.25, rel=1e-14)
    assert w.p_prime(0.5) == pytest.approx(-16.0, rel=1e-14)
    assert w.zeta(-0.25) == pytest.approx(-4.0, rel=1e-14)
    assert w.sigma(0.5) == pytest.approx(0.5, rel=1e-14)


def test_pole_at_origin_raises():
    w = trife.Weierstrass(1.0, 0.5)
    with pytest.raises(trife.PoleError):
        w.p(0)


def test_hyperbolic_lattice_matches_sinh():
    w = trife.Weierstrass(4 / 3, -8 / 27)
    z = 0.4 + 0.3j
    import cmath

    assert abs(w.p(z) - (1 / cmath.sinh(z) ** 2 + 1 / 3)) < 1e-12


def test_elliptic_family_solves_equation():
    s = trife.elliptic_solution(alpha=0.8 + 0.1j, beta=0.3, gamma=[0.1, -0.2j, 0.05], a1=0.2 + 0.1j,
                                a2=-0.3 + 0.2j, g2=1.1 + 0.2j, g3=-0.3 + 0.4j)
    report = trife.fe14_report(s, seed=1, count=100)
    assert report["pass"]
    assert report["max_abs"] < 1e-8
    assert trife.det22_report(s, seed=1, count=100)["pass"]


def test_literal_entire_form_fails():
    s = trife.entire_solution([1, 1, 1], 1.0, gamma=[1, 0, 0], literal=True)
    m = s.mismatch(0.1, 0.1)
    expected = 2 * (1 - 1 / math.sqrt(3)) * (2 * math.exp(0.1) + math.exp(-0.2))
    assert abs(abs(m) - expected) < 1e-12


def test_family_from_json():
    s = trife.family_from_json(json.dumps({"type": "polynomial", "alpha": 1.5, "beta": [0.1, 0.2, 0.3]}))
    assert s.family == "polynomial"
    assert abs(s.mismatch(0.3, -0.7)) < 1e-12


def test_chain_ode():
    c = trife.PhiChain(0.7, 1.0, 0.5 + 0.2j, 0.8 - 0.3j, 0.1)
    assert abs(c.u(0.0)) == 0.0
    assert c.ode_residual(0.2 + 0.1j) < 1e-12


def test_cli_in_process():
    code, out, err = trife.run_cli("limits")
    assert code == 0, err
    doc = json.loads(out)
    assert doc["pass"]
    assert {l["name"] for l in doc["ladders"]} == {"c3", "c2", "lambda"}
    code, _, _ = trife.run_cli("verify", "--suite", "nope")
    assert code == 2
