"""Ring axioms, the text grammar round trip, and integer factorization."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from icotk.algebra import (
    P2,
    P4,
    Poly,
    Ring,
    elementary_symmetric,
    factorize,
    int_radical,
    poly_parse,
)
from icotk.config import FactorBudget
from icotk.errors import FactorBudgetError, NotDivisibleError, ParseError


def _poly_strategy(ring, max_exp=4, max_terms=6, coeff_bound=9):
    expo = st.tuples(*([st.integers(0, max_exp)] * ring.nvars))
    term = st.tuples(expo, st.integers(-coeff_bound, coeff_bound))
    return st.lists(term, max_size=max_terms).map(
        lambda items: Poly.from_terms(ring, items)
    )


polys2 = _poly_strategy(P2)
polys4 = _poly_strategy(P4, max_exp=3, max_terms=5)
points3 = st.tuples(*([st.integers(-20, 20)] * 3))


@given(polys2, polys2, polys2)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + Poly.zero(P2) == p
    assert p * Poly.constant(P2, 1) == p
    assert (p - p).is_zero()


@given(polys2, points3)
def test_evaluation_is_a_homomorphism(p, point):
    q = poly_parse("x*y - 3*z^2 + 1", P2)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)


@given(polys2)
def test_parse_print_round_trip(p):
    assert poly_parse(str(p), P2) == p


@given(polys4)
def test_parse_print_round_trip_p4(p):
    assert poly_parse(str(p), P4) == p


def test_grammar_forms():
    p = poly_parse("x0^2*x1 - 3/4*x2*x3 + 5", P4)
    assert p.coeff((2, 1, 0, 0, 0)) == 1
    assert p.coeff((0, 0, 1, 1, 0)) == Fraction(-3, 4)
    assert p.coeff((0, 0, 0, 0, 0)) == 5
    # whitespace and a leading unary sign
    assert poly_parse(" - x + y ", P2) == poly_parse("y - x", P2)
    assert poly_parse("(x + y)^2 - x^2 - y^2", P2) == poly_parse("2*x*y", P2)


@pytest.mark.parametrize("bad", ["x +", "2^x", "x0", "x**2", "(x", "3/0"])
def test_grammar_rejects(bad):
    with pytest.raises(ParseError):
        poly_parse(bad, P2)


@given(polys2, polys2)
def test_exact_division_round_trip(p, q):
    if q.is_zero():
        return
    assert (p * q).exact_div(q) == p


def test_exact_division_failure():
    p = poly_parse("x^2 + y", P2)
    q = poly_parse("x + 1", P2)
    with pytest.raises(NotDivisibleError):
        p.exact_div(q)


@given(polys2)
def test_content_primitive_factorization(p):
    if p.is_zero():
        return
    c, prim = p.content_primitive()
    assert Poly.constant(P2, c) * prim == p
    c2, prim2 = prim.content_primitive()
    assert c2 == 1 and prim2 == prim


def test_elementary_symmetric_at_ones():
    # sigma_k(1,..,1) = C(5, k)
    from math import comb

    for k in range(1, 6):
        s = elementary_symmetric(P4, k)
        assert s.evaluate((1, 1, 1, 1, 1)) == comb(5, k)
    assert elementary_symmetric(P4, 2).degree() == 2
    assert elementary_symmetric(P4, 4).degree() == 4


@given(st.integers(1, 10**6))
def test_factorize_reconstructs(n):
    fac = factorize(n)
    prod = 1
    for p, e in fac.items():
        prod *= p**e
    assert prod == n


def test_factorize_known_values():
    assert factorize(1) == {}
    assert factorize(2310) == {2: 1, 3: 1, 5: 1, 7: 1, 11: 1}
    assert factorize(2**10 * 3**4) == {2: 10, 3: 4}
    # a semiprime beyond the trial-division range exercises Pollard rho
    n = 1_000_003 * 1_000_033
    assert factorize(n) == {1_000_003: 1, 1_000_033: 1}


def test_int_radical_values():
    assert int_radical(1) == 1
    assert int_radical(8) == 2
    assert int_radical(2310) == 2310
    assert int_radical(-12) == 6


def test_factor_budget_exhaustion():
    tiny = FactorBudget(trial_limit=10, rho_iterations=2)
    with pytest.raises(FactorBudgetError):
        factorize(1_000_003 * 1_000_033, tiny)


def test_ring_rejects_duplicate_names():
    with pytest.raises(ValueError):
        Ring(("x", "x"))


@given(polys2, st.integers(0, 4))
def test_power_matches_repeated_product(p, k):
    expected = Poly.constant(P2, 1)
    for _ in range(k):
        expected = expected * p
    assert p**k == expected
