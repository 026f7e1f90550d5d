"""Groebner engine: basis properties, elimination, saturation, Hilbert data.

The frozen numeric oracles (Hilbert values 5/14/30/54/86, dim/degree (2, 8),
genus 9) were computed independently with sympy before this engine existed;
see scripts/freeze_oracles.py.
"""

import pytest
from hypothesis import given, settings, strategies as st

from icotk.algebra import P2, P4, Poly, poly_parse
from icotk.config import GroebnerBudget
from icotk.errors import BudgetExceededError
from icotk.groebner import (
    GREVLEX,
    LEX,
    Ideal,
    arithmetic_genus,
    dim_degree,
    eliminate,
    hilbert_function,
    normal_form,
    radical_member,
    saturate,
)
from icotk.ico_surface import fixed_geometry


def _p2(text):
    return poly_parse(text, P2)


def _p4(text):
    return poly_parse(text, P4)


@pytest.fixture(scope="module")
def surface():
    return fixed_geometry().surface_ideal()


def test_basis_contains_normal_form_zero_generators(surface):
    basis = surface.groebner()
    for g in surface.gens:
        assert normal_form(g, basis).is_zero()


def test_groebner_is_reduced(surface):
    basis = surface.groebner()
    from icotk.groebner import _leading

    lts = [_leading(g, GREVLEX)[0] for g in basis]
    for i, g in enumerate(basis):
        # monic
        assert _leading(g, GREVLEX)[1] == 1
        # no term of g divisible by another basis element's leading term
        for j, lt in enumerate(lts):
            if i == j:
                continue
            for e in g.terms:
                assert not all(a >= b for a, b in zip(e, lt))


small_polys = st.lists(
    st.tuples(
        st.tuples(*([st.integers(0, 2)] * 3)),
        st.integers(-5, 5),
    ),
    min_size=1,
    max_size=3,
).map(lambda items: Poly.from_terms(P2, items))


@given(st.lists(small_polys, min_size=1, max_size=3), small_polys, small_polys)
@settings(max_examples=40)
def test_ideal_membership_of_combinations(gens, a, b):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    I = Ideal(P2, gens)
    basis = I.groebner()
    combo = a * gens[0] + b * gens[-1]
    assert normal_form(combo, basis).is_zero()


@given(small_polys, small_polys)
@settings(max_examples=30)
def test_normal_form_is_additive_on_remainders(p, q):
    I = Ideal(P2, [_p2("x^2 - y*z"), _p2("x*y - z^2")])
    basis = I.groebner()
    r = normal_form(p + q, basis)
    assert r == normal_form(normal_form(p, basis) + normal_form(q, basis), basis)


def test_lex_elimination():
    # projecting the twisted-cubic-style ideal onto (y, z)
    I = Ideal(P2, [_p2("x^2 - y"), _p2("x^3 - z")])
    J = eliminate(I, {"x"})
    assert J.gens, "elimination lost the relation"
    target = _p2("y^3 - z^2")
    basis = Ideal(P2, list(J.gens)).groebner(LEX)
    assert normal_form(target, basis).is_zero()


def test_saturation_strips_a_component():
    I = Ideal(P2, [_p2("x*y"), _p2("x*z")])
    J = saturate(I, _p2("x"))
    basis = J.groebner()
    assert normal_form(_p2("y"), basis).is_zero()
    assert normal_form(_p2("z"), basis).is_zero()


def test_radical_membership():
    I = Ideal(P2, [_p2("x^2")])
    assert radical_member(_p2("x"), I)
    assert radical_member(_p2("x*y"), I)
    assert not radical_member(_p2("y"), I)
    assert radical_member(Poly.zero(P2), I)


def test_budget_is_honoured():
    gens = [_p4("x0^2*x1 - x2^3"), _p4("x1^2*x3 - x4^3"), _p4("x0*x4 - x2*x3")]
    with pytest.raises(BudgetExceededError):
        Ideal(P4, gens).groebner(GREVLEX, GroebnerBudget(max_reductions=3))


# -- Hilbert data ------------------------------------------------------------


def test_surface_hilbert_function(surface):
    # dim A_n for the coordinate ring of {sigma2 = sigma4 = 0}
    assert [hilbert_function(surface, n) for n in range(1, 6)] == [5, 14, 30, 54, 86]
    # closed form 4n^2 - 4n + 6 for n >= 2
    for n in range(2, 6):
        assert hilbert_function(surface, n) == 4 * n * n - 4 * n + 6


def test_surface_dim_degree(surface):
    assert dim_degree(surface) == (2, 8)


def test_hyperplane_and_irrelevant_dimensions():
    assert dim_degree(Ideal(P4, [_p4("x0")])) == (3, 1)
    irrelevant = Ideal(P4, [Poly.variable(P4, f"x{i}") for i in range(5)])
    dim, _ = dim_degree(irrelevant)
    assert dim == -1


def test_curve_section_genus(surface):
    geo = fixed_geometry()
    h = _p4("x0 + 2*x1 + 3*x2 + 5*x3 + 7*x4")
    I = Ideal(P4, [geo.sigma2, geo.sigma4, h])
    assert dim_degree(I) == (1, 8)
    assert arithmetic_genus(I) == 9


def test_plane_conic_genus():
    I = Ideal(P2, [_p2("x^2 + y^2 - z^2")])
    assert dim_degree(I) == (1, 2)
    assert arithmetic_genus(I) == 0


def test_hilbert_function_of_unit_ideal():
    I = Ideal(P2, [Poly.constant(P2, 1)])
    assert hilbert_function(I, 3) == 0
