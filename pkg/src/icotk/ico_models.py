"""Ico models: curves cut inside the surface {sigma_2 = sigma_4 = 0} by
polynomial tuples, their diagonal data and degeneracy invariants, and the
one-polynomial general families.

The diagonal matrix a[i][j] -- the coefficient of x_i^(deg f_j) in f_j --
doubles as the value f_j(e_i), and everything degeneracy-related factors
through it: a model is degenerate exactly when its curve meets one of the
five coordinate points.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import P4, Poly, grevlex_key, int_radical
from .config import DEFAULT_FACTOR_BUDGET, DEFAULT_GB_BUDGET, FactorBudget, GroebnerBudget
from .errors import IcotkError
from .groebner import GREVLEX, Ideal, dim_degree, normal_form
from .ico_surface import fixed_geometry


class IcoModel:
    """A tuple of primitive integer homogeneous polynomials in the P4 ring.

    Rational input is normalized to primitive integer form first (the
    diagonal invariants below are only canonical on that normalization).
    """

    def __init__(self, polys):
        polys = list(polys)
        if not polys:
            raise ValueError("ico model needs at least one polynomial")
        norm = []
        for f in polys:
            if not isinstance(f, Poly) or f.ring != P4:
                raise ValueError("ico model polynomials live in the x0..x4 ring")
            if f.is_zero():
                raise ValueError("ico model polynomials must be nonzero")
            if not f.is_homogeneous():
                raise ValueError("ico model polynomials must be homogeneous")
            if f.degree() < 1:
                raise ValueError("ico model polynomials must have degree >= 1")
            norm.append(f.primitive_part())
        self.polys = tuple(norm)
        self.degrees = tuple(f.degree() for f in self.polys)
        self._diagonal = None

    def __repr__(self):
        return "IcoModel(" + "; ".join(str(f) for f in self.polys) + ")"

    def diagonal(self) -> tuple:
        """5 x m matrix a[i][j] = coefficient of x_i^(n_j) in f_j.

        Computed by coefficient extraction and re-checked against evaluation
        at the coordinate points (the two must agree for any polynomial).
        """
        if self._diagonal is None:
            rows = []
            for i in range(5):
                row = []
                for j, f in enumerate(self.polys):
                    expo = tuple(self.degrees[j] if k == i else 0 for k in range(5))
                    coeff = f.coeff(expo)
                    point = [1 if k == i else 0 for k in range(5)]
                    if f.evaluate(point) != coeff:
                        raise AssertionError("diagonal extraction mismatch")
                    row.append(int(coeff))
                rows.append(tuple(row))
            self._diagonal = tuple(rows)
        return self._diagonal


def diagonal(model: IcoModel) -> tuple:
    return model.diagonal()


def is_degenerate(model: IcoModel) -> bool:
    """True iff some diagonal row vanishes identically."""
    return any(all(a == 0 for a in row) for row in model.diagonal())


def meets_degeneracy_locus(model: IcoModel) -> bool:
    """True iff the model's zero scheme contains a coordinate point e_i,
    i.e. some e_i kills every defining polynomial.  Coincides with
    is_degenerate because f_j(e_i) is the (i,j) diagonal entry."""
    for i in range(5):
        point = [1 if k == i else 0 for k in range(5)]
        if all(f.evaluate(point) == 0 for f in model.polys):
            return True
    return False


def nu_f(model: IcoModel, budget: FactorBudget = DEFAULT_FACTOR_BUDGET) -> int:
    """Radical of the product of all nonzero diagonal entries (empty
    product = 1)."""
    prod = 1
    for row in model.diagonal():
        for a in row:
            if a:
                prod *= a
    return int_radical(prod, budget) if prod != 1 else 1


def model_ideal(model: IcoModel) -> Ideal:
    geo = fixed_geometry()
    return Ideal(P4, [geo.sigma2, geo.sigma4, *model.polys])


def is_curve(model: IcoModel, budget: GroebnerBudget = DEFAULT_GB_BUDGET) -> bool:
    """True iff the cut-out scheme has projective dimension 1."""
    return dim_degree(model_ideal(model), budget)[0] == 1


# ---------------------------------------------------------------------------
# the general families: monomial bases of A_n = (ring/(sigma2, sigma4))_n
# ---------------------------------------------------------------------------


def expected_rank(n: int) -> int:
    """dim A_n: 5 for n = 1, else 4n^2 - 4n + 6."""
    if n < 1:
        raise ValueError("n >= 1 required")
    return 5 if n == 1 else 4 * n * n - 4 * n + 6


def _degree_monomials(n: int):
    """Exponent tuples of degree n in five variables, grevlex-descending."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(tuple(prefix) + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, slots - 1)

    rec([], n, 5)
    out.sort(key=grevlex_key, reverse=True)
    return out


def basis_An(n: int, budget: GroebnerBudget = DEFAULT_GB_BUDGET) -> tuple:
    """Degree-n monomials forming a basis of A_n, pure powers first.

    Starts from x0^n..x4^n and completes greedily over the remaining
    monomials in grevlex order, certifying independence by exact row
    reduction of normal forms modulo (sigma2, sigma4).  Raises if the pure
    powers are dependent (not expected for any n, but verified, not assumed).
    """
    r = expected_rank(n)
    surface = fixed_geometry().surface_ideal()
    basis_polys = surface.groebner(GREVLEX, budget)

    # row reduction state: pivot monomial -> reduced coefficient row (dict)
    pivots: dict = {}

    def try_add(vec: dict) -> bool:
        vec = dict(vec)
        for piv, row in pivots.items():
            if piv in vec:
                factor = Fraction(vec[piv]) / row[piv]
                for e, c in row.items():
                    s = vec.get(e, 0) - factor * c
                    if s:
                        vec[e] = s
                    else:
                        vec.pop(e, None)
        if not vec:
            return False
        piv = max(vec, key=grevlex_key)
        pivots[piv] = vec
        return True

    chosen = []
    for i in range(5):
        expo = tuple(n if k == i else 0 for k in range(5))
        nf = normal_form(Poly.monomial(P4, expo), basis_polys, GREVLEX, budget)
        if not try_add(nf.terms):
            raise IcotkError(f"pure powers are dependent in A_{n}")
        chosen.append(expo)
    for expo in _degree_monomials(n):
        if len(chosen) == r:
            break
        if expo in chosen:
            continue
        nf = normal_form(Poly.monomial(P4, expo), basis_polys, GREVLEX, budget)
        if try_add(nf.terms):
            chosen.append(expo)
    if len(chosen) != r:
        raise IcotkError(
            f"A_{n} basis completion found rank {len(chosen)}, expected {r}"
        )
    return tuple(Poly.monomial(P4, e) for e in chosen)


def general_model(n: int, v) -> IcoModel:
    """The one-polynomial model sum(v_i * s_i) over the A_n monomial basis;
    non-degenerate exactly when v_1..v_5 are all nonzero."""
    v = list(v)
    basis = basis_An(n)
    if len(v) != len(basis):
        raise ValueError(f"coefficient vector must have length {len(basis)}")
    f = Poly.zero(P4)
    for c, s in zip(v, basis):
        f = f + s * c
    if f.is_zero():
        raise ValueError("zero polynomial is not a model")
    return IcoModel([f])


def genus_phi_sum(degrees) -> int:
    """Arithmetic genus of a complete-intersection curve in P4 by the
    inclusion-exclusion sum over the three hypersurface degrees, using
    phi(z) = (z+1)(z+2)(z+3)(z+4)/24."""
    d1, d2, d3 = degrees

    def phi(z: int) -> Fraction:
        return Fraction((z + 1) * (z + 2) * (z + 3) * (z + 4), 24)

    singles = [d1, d2, d3]
    pairs = [d1 + d2, d1 + d3, d2 + d3]
    total = sum(phi(-d) for d in singles) - sum(phi(-d) for d in pairs) + phi(
        -(d1 + d2 + d3)
    )
    if total.denominator != 1:
        raise ArithmeticError("phi-sum did not produce an integer")
    return int(total)


def genus_general(n: int) -> int:
    """(2n+1)^2, cross-checked against the inclusion-exclusion formula for
    the complete intersection of degrees (2, 4, n)."""
    if n < 1:
        raise ValueError("n >= 1 required")
    closed = (2 * n + 1) ** 2
    check = genus_phi_sum((2, 4, n))
    if closed != check:
        raise AssertionError(
            f"genus cross-check failed at n={n}: {closed} vs {check}"
        )
    return closed
