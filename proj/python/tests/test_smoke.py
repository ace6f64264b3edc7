import json
import math

import pytest

import riesz


def test_version():
    assert riesz.__version__.count(".") == 2


def test_phi_plateau_and_support():
    p = riesz.BallPair(3, 1.0, 0.8, 0.1)
    assert p.a == pytest.approx(0.32)
    assert riesz.phi(p, 0.1) == pytest.approx(4 / 3 * math.pi * 0.8**3, rel=1e-14)
    assert riesz.phi(p, 1.8) == 0.0
    assert riesz.phi_derivative(p, 1.0) == pytest.approx(-riesz.gamma_constant(p))


def test_inadmissible_pair_raises_value_error():
    with pytest.raises(ValueError):
        riesz.BallPair(2, 1.0, 2.5, 0.1)


def test_spectrum():
    assert riesz.eigenvalue(3, 1.0, 2) == pytest.approx(0.0, abs=1e-14)
    s = riesz.gap_constant(3, 0.5, 50)
    assert s.gap_A < 0.5
    assert s.multiplicities[:3] == [1, 3, 5]
    assert riesz.harmonic_dimension(4, 2) == 9


def test_ledger_round_trip():
    L = riesz.constant_ledger(2, 0.25)
    assert "c_final" in L
    assert 0.0 < L["c_final"] < 1.0
    again = riesz.ledger_from_json(L.to_json())
    assert again.text("c_final") == L.text("c_final")
    with pytest.raises(riesz.CertificationError):
        L["no_such_entry"]
    with pytest.raises(riesz.MissingEntryError):
        L["no_such_entry"]


def test_density_and_deficit():
    p = riesz.BallPair(2, 1.0, 1.0, 0.1)
    ball = riesz.ball_density(p)
    assert ball.mass == pytest.approx(math.pi, rel=1e-12)
    d = riesz.deficit(ball, 0.5)
    assert abs(d["deficit"]) <= d["eps_quad"]
    bumpy = riesz.perturbed_ball(2, 1.0, 3, 0.1)
    d = riesz.deficit(bumpy, 0.5)
    assert d["deficit"] > d["eps_quad"]
    back = riesz.density_from_json(bumpy.to_json())
    assert back.mass == bumpy.mass


def test_competitor_and_centering():
    rho = riesz.perturbed_ball(2, 1.0, 2, 0.05)
    res = riesz.competitor(rho, 0.02)
    assert res.rho_tilde.mass == pytest.approx(rho.mass, rel=1e-9)
    assert riesz.verify_competitor(rho, res, 0.02, 1e-10)
    moved = riesz.translated_ball(2, 1.0, [0.05, 0.0])
    with pytest.raises(ValueError):
        riesz.competitor(moved, 0.1)
    c = riesz.center(moved)
    assert c["shift"] == pytest.approx([0.05, 0.0], abs=1e-6)


def test_corpus_audit_deterministic():
    a = riesz.corpus_item(2, 9, 3, 0.25)
    b = riesz.corpus_item(2, 9, 3, 0.25)
    assert a.description == b.description and a.rho.mass == b.rho.mass
    rec = riesz.audit_item(a)
    assert rec["deficit"] >= -rec["eps_quad"]


def test_oracle_seeded():
    p = riesz.BallPair(2, 1.0, 1.0, 0.1)
    v1, s1 = riesz.mc_intersection_volume(p, 1.0, 100000, riesz.derive_seed(1, 0))
    v2, _ = riesz.mc_intersection_volume(p, 1.0, 100000, riesz.derive_seed(1, 0))
    assert v1 == v2
    assert abs(v1 - riesz.phi(p, 1.0)) < 5 * s1
