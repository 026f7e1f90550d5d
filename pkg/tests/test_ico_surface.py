"""The fixed geometry: tau/rho identities, T_tau, C_tau, frozen point oracles."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from icotk.algebra import P2, Poly, poly_parse
from icotk.binaryforms import ZPhi
from icotk.errors import BasePointError, NotOnSurfaceError
from icotk.ico_surface import (
    ProjPoint,
    evaluate_phi,
    fixed_geometry,
    rho_point,
    tau_point,
    ttau_points,
    verify_identities,
)


@pytest.fixture(scope="module")
def geo():
    return fixed_geometry()


# -- structural facts about the fixed forms ----------------------------------


def test_degrees(geo):
    assert [t.degree() for t in geo.t] == [3, 3, 3, 3]
    assert [t.degree() for t in geo.tau] == [12] * 5
    assert [r.degree() for r in geo.rho] == [8] * 3
    assert geo.lam.degree() == 95
    assert len(geo.lam.terms) == 2228


def test_lambda_factorization(geo):
    # lambda = (t0 t1 t2 t3 (t0+t1+t2+t3))^6 * v with v of degree 5
    v = geo.ctau_factors()[-1]
    assert v.degree() == 5
    core = geo.t[0] * geo.t[1] * geo.t[2] * geo.t[3] * geo.t_sum
    assert geo.lam == core**6 * v


def test_ctau_factor_degrees(geo):
    assert sorted(f.degree() for f in geo.ctau_factors()) == [1, 1, 1, 2, 2, 2, 3, 3, 5]


# -- frozen point oracles ------------------------------------------------------


def test_tau_point_124(geo):
    q = tau_point((1, 2, 4))
    assert q.coords == (126, -140, 315, 630, -180)
    assert geo.sigma2.evaluate(q.coords) == 0
    assert geo.sigma4.evaluate(q.coords) == 0
    # raw values before primitive normalization share the content 64
    raw = [t.evaluate((1, 2, 4)) for t in geo.tau]
    assert raw == [8064, -8960, 20160, 40320, -11520]


def test_rho_round_trip_example():
    assert rho_point((126, -140, 315, 630, -180)).coords == (1, 2, 4)


def test_rho_rejects_off_surface_points():
    with pytest.raises(NotOnSurfaceError):
        rho_point((1, 1, 1, 1, 1))


def test_rho_base_points(geo):
    # every r_i has >= 3 zero factors at a coordinate point
    for i in range(5):
        with pytest.raises(BasePointError):
            rho_point(geo.e_points[i])


def test_tau_base_points_are_ttau(geo):
    rational, _ = ttau_points()
    for p in rational:
        with pytest.raises(BasePointError):
            tau_point(p)


def test_ttau_rational_points(geo):
    rational, quadratic = ttau_points()
    assert {p.coords for p in rational} == {
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 0, 1),
        (0, 1, 1),
        (1, 1, 1),
    }
    for p in rational:
        assert all(t.evaluate(p.coords) == 0 for t in geo.tau)
    for coords in (quadratic.coords, quadratic.conjugate()):
        assert all(ZPhi.is_zero(evaluate_phi(t, coords)) for t in geo.tau)


def test_110_is_not_a_base_point(geo):
    vals = [t.evaluate((1, 1, 0)) for t in geo.tau]
    assert vals == [0, 0, 0, 1, 0]


# -- identity suite -----------------------------------------------------------


def test_identities_symbolic():
    rep = verify_identities(mode="symbolic", samples=5, seed=11)
    assert rep.passed, rep.checks


def test_identities_sampled():
    rep = verify_identities(mode="sampled", samples=25, seed=7)
    assert rep.passed, rep.checks


@given(st.tuples(st.integers(-60, 60), st.integers(-60, 60), st.integers(-60, 60)))
@settings(max_examples=60)
def test_tau_lands_on_surface_and_rho_inverts(geo, p):
    if geo.lam.evaluate(p) == 0:
        return
    q = [t.evaluate(p) for t in geo.tau]
    assert geo.sigma2.evaluate(q) == 0
    assert geo.sigma4.evaluate(q) == 0
    lam_p = geo.lam.evaluate(p)
    back = [r.evaluate(q) for r in geo.rho]
    assert back == [lam_p * c for c in p]


# -- the collapse lemma: tau maps each C_tau component to a single e_i --------

COLLAPSE_LINE_ORACLES = [
    # (line through two points of the component, target e index)
    ("x", 2),
    ("z", 3),
    ("y - z", 0),
    ("x - y", 3),
    ("x + y - z", 3),
]


@pytest.mark.parametrize("line,target", COLLAPSE_LINE_ORACLES)
def test_collapse_on_linear_factors(geo, line, target):
    f = poly_parse(line, P2)
    rng = random.Random(99)
    hits = 0
    while hits < 6:
        p = tuple(rng.randint(-30, 30) for _ in range(3))
        if f.evaluate(p) != 0:
            continue
        vals = [t.evaluate(p) for t in geo.tau]
        if all(v == 0 for v in vals):
            continue  # landed on T_tau
        q = ProjPoint(vals)
        assert q == geo.e_points[target], (line, p, q.coords)
        hits += 1


CONIC_ORACLES = [
    # rational parametrizations of the two conic factors
    (lambda s, t: (s * s, t * t - s * t, s * t), 0),  # x*y + x*z - z^2
    (lambda s, t: (s * s - t * t, s * t, s * s), 2),  # z^2 - y^2 - x*z
]


@pytest.mark.parametrize("param,target", CONIC_ORACLES)
def test_collapse_on_conic_factors(geo, param, target):
    hits = 0
    for s in range(-6, 7):
        for t in range(-6, 7):
            p = param(s, t)
            if not any(p):
                continue
            vals = [u.evaluate(p) for u in geo.tau]
            if all(v == 0 for v in vals):
                continue
            assert ProjPoint(vals) == geo.e_points[target], (p,)
            hits += 1
    assert hits > 50


def test_proj_point_normalization():
    assert ProjPoint((2, -4, 6)).coords == (1, -2, 3)
    assert ProjPoint((-2, 4, -6)).coords == (1, -2, 3)
    assert ProjPoint((0, 0, -5)).coords == (0, 0, 1)
    with pytest.raises(ValueError):
        ProjPoint((0, 0, 0))


def test_quadratic_point_conjugate():
    _, quad = ttau_points()
    assert quad.coords == ((1, 0), (1, 0), (0, 1))
    assert quad.conjugate() == ((1, 0), (1, 0), (1, -1))
