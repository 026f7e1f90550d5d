"""Generalized Fermat pipeline on the surface sigma_2 = sigma_4 = 0.

The surface scan is the engineering core: instead of a hopeless 5-dim box
enumeration it fixes the value-multiset of three coordinates (the three
smallest in absolute value, so a box bound B on them finds every point
whose three smallest coordinates fit).  Writing s, e2, e3 for the symmetric
functions of the chosen triple and P = x3 + x4, Q = x3*x4 for the missing
pair, vanishing of sigma_2 and sigma_4 says

    s*P + Q = -e2        and        e3*P + e2*Q = 0.

When the determinant D = s*e2 - e3 is nonzero this pins P and Q, and the
pair is recovered from integer roots of T^2 - P*T + Q.  The singular case
D = 0 is consistent only when e2 = e3 = 0, i.e. the triple is {a, 0, 0};
there Q = -a*P and the sweep over |P| <= 2B^2 is enumerated in closed form
through the factorization (x3 + a)(x4 + a) = a^2.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import get_context

from .algebra import P4, Poly, factorize
from .config import DEFAULT_FACTOR_BUDGET, FactorBudget, default_threads
from .errors import BudgetExceededError
from .ico_models import IcoModel
from .ico_surface import ProjPoint


@dataclass(frozen=True)
class FermatInstance:
    """The equation a_0 x_0^n + ... + a_4 x_4^n = 0."""

    a: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        if len(self.a) != 5 or any(v == 0 for v in self.a):
            raise ValueError("need five nonzero coefficients")
        if self.n < 1:
            raise ValueError("exponent n >= 1 required")

    def lhs(self, coords) -> int:
        return sum(ai * int(c) ** self.n for ai, c in zip(self.a, coords))


def instance_model(inst: FermatInstance) -> IcoModel:
    """The one-polynomial ico model of the instance; its diagonal column
    is exactly the coefficient vector."""
    f = Poly.zero(P4)
    for i, ai in enumerate(inst.a):
        expo = tuple(inst.n if k == i else 0 for k in range(5))
        f = f + Poly.monomial(P4, expo, ai)
    model = IcoModel([f])
    col = tuple(row[0] for row in model.diagonal())
    if col != inst.a:
        raise AssertionError("instance diagonal mismatch")
    return model


# ---------------------------------------------------------------------------
# the surface scan
# ---------------------------------------------------------------------------


def _sigma24(coords):
    """(sigma_2, sigma_4) of five integers, via Newton's identities."""
    p1 = p2 = p3 = p4 = 0
    for c in coords:
        c = int(c)
        p1 += c
        p2 += c * c
        p3 += c * c * c
        p4 += c * c * c * c
    e1 = p1
    e2 = (e1 * p1 - p2) // 2
    e3 = (e2 * p1 - e1 * p2 + p3) // 3
    e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) // 4
    return e2, e4


def _signed_divisors(m: int):
    """All divisors of m > 0, both signs."""
    out = []
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.extend((d, -d, m // d, -(m // d)))
        d += 1
    return set(out)


def _complete_triple(B, v1, v2, v3):
    """Integer pairs (x3, x4) putting (v1, v2, v3, x3, x4) on the surface,
    within the documented singular sweep range |x3 + x4| <= 2B^2."""
    s = v1 + v2 + v3
    e2 = v1 * v2 + v1 * v3 + v2 * v3
    e3 = v1 * v2 * v3
    D = s * e2 - e3
    if D != 0:
        num_p = -e2 * e2
        num_q = e2 * e3
        if num_p % D or num_q % D:
            return
        P = num_p // D
        Q = num_q // D
        disc = P * P - 4 * Q
        if disc < 0:
            return
        w = math.isqrt(disc)
        if w * w != disc or (P + w) % 2:
            return
        yield ((P + w) // 2, (P - w) // 2)
        return
    if e2 or e3:
        return  # singular and inconsistent
    # the triple is {a, 0, 0}: Q = -a*P, so (x3 + a)(x4 + a) = a^2
    a = s
    if a == 0:
        yield (1, 0)
        return
    cap = 2 * B * B
    for d in _signed_divisors(a * a):
        x3 = d - a
        x4 = a * a // d - a
        if abs(x3 + x4) <= cap:
            yield (x3, x4)


def _scan_chunk(task):
    B, v1_list = task
    found = set()
    for v1 in v1_list:
        for v2 in range(v1, B + 1):
            for v3 in range(v2, B + 1):
                for x3, x4 in _complete_triple(B, v1, v2, v3):
                    t5 = (v1, v2, v3, x3, x4)
                    if any(t5):
                        found.add(t5)
    return found


@dataclass(frozen=True)
class ScanReport:
    B: int
    strategy: str
    points: tuple  # sorted ProjPoints
    trivial: tuple
    nontrivial: tuple
    millis: float

    @property
    def is_trivial(self) -> bool:
        return not self.nontrivial


def _is_trivial_point(pt: ProjPoint) -> bool:
    return all(abs(c) <= 1 for c in pt.coords)


def scan_surface(B: int, threads: int | None = None) -> ScanReport:
    """All primitive surface points (up to sign) whose three smallest
    absolute coordinates are <= B, enumerated by the 3+2 split."""
    if B < 1:
        raise ValueError("B >= 1 required")
    t0 = time.perf_counter()
    if threads is None:
        threads = default_threads()
    v1_all = list(range(-B, B + 1))
    if threads <= 1 or B <= 4:
        raw_sets = [_scan_chunk((B, v1_all))]
    else:
        tasks = [(B, v1_all[i :: 4 * threads]) for i in range(4 * threads)]
        with get_context("fork").Pool(threads) as pool:
            raw_sets = pool.map(_scan_chunk, tasks)
    points = set()
    for raw in raw_sets:
        for t5 in raw:
            for perm in set(itertools.permutations(t5)):
                pt = ProjPoint(perm)
                if _sigma24(pt.coords) != (0, 0):
                    raise AssertionError(f"scan emitted an off-surface point {pt}")
                points.add(pt)
    pts = tuple(sorted(points, key=lambda p: p.coords))
    trivial = tuple(p for p in pts if _is_trivial_point(p))
    nontrivial = tuple(p for p in pts if not _is_trivial_point(p))
    return ScanReport(
        B=B,
        strategy="three-two-split",
        points=pts,
        trivial=trivial,
        nontrivial=nontrivial,
        millis=(time.perf_counter() - t0) * 1000.0,
    )


def scan_instance(inst: FermatInstance, B: int, threads: int | None = None) -> ScanReport:
    """Surface points additionally satisfying the instance equation."""
    surf = scan_surface(B, threads)
    kept = tuple(p for p in surf.points if inst.lhs(p.coords) == 0)
    trivial = tuple(p for p in kept if _is_trivial_point(p))
    nontrivial = tuple(p for p in kept if not _is_trivial_point(p))
    return ScanReport(
        B=B,
        strategy="three-two-split+instance-filter",
        points=kept,
        trivial=trivial,
        nontrivial=nontrivial,
        millis=surf.millis,
    )


# ---------------------------------------------------------------------------
# unit equations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitEquation:
    k: int
    u: tuple  # k Fractions summing to 1
    S: tuple  # sorted primes
    degenerate: bool
    vanishing: tuple  # index subsets of u with zero sum
    off_surface: bool
    support: tuple  # original coordinate indices that survived


def _is_s_unit(q: Fraction, S) -> bool:
    for part in (q.numerator, q.denominator):
        part = abs(part)
        for p in S:
            while part % p == 0:
                part //= p
        if part != 1:
            return False
    return q != 0


def unit_reduce(
    inst: FermatInstance,
    x,
    budget: FactorBudget = DEFAULT_FACTOR_BUDGET,
) -> UnitEquation:
    """Divide the instance equation by its last surviving term: with the
    nonzero coordinates x_{i_0}..x_{i_k}, u_j = -(a_{i_j}/a_{i_k}) *
    (x_{i_j}/x_{i_k})^n for j < k sums to 1 and each u_j is an S-unit for
    S = primes of prod a_{i_j} x_{i_j}.

    Points off the ambient surface are allowed (the arithmetic does not
    care) but flagged, so unit reduction is testable on synthetic input.
    """
    pt = x if isinstance(x, ProjPoint) else ProjPoint(x)
    if len(pt.coords) != 5:
        raise ValueError("expected a point with five coordinates")
    if inst.lhs(pt.coords) != 0:
        raise ValueError("point does not satisfy the instance equation")
    nz = [i for i, c in enumerate(pt.coords) if c != 0]
    k = len(nz) - 1
    if k < 1:
        raise ValueError("need at least two nonzero coordinates")
    last = nz[-1]
    ak = inst.a[last]
    xk = pt.coords[last]
    u = tuple(
        Fraction(-inst.a[i] * pt.coords[i] ** inst.n, ak * xk**inst.n)
        for i in nz[:-1]
    )
    if sum(u) != 1:
        raise AssertionError("unit reduction lost the equation")
    prod = 1
    for i in nz:
        prod *= inst.a[i] * pt.coords[i]
    S = tuple(sorted(factorize(abs(prod), budget)))
    for ui in u:
        if not _is_s_unit(ui, S):
            raise AssertionError(f"{ui} is not an S-unit for S={S}")
    vanishing = []
    for size in range(1, k):
        for sub in itertools.combinations(range(k), size):
            if sum(u[j] for j in sub) == 0:
                vanishing.append(sub)
    off_surface = _sigma24(pt.coords) != (0, 0)
    return UnitEquation(
        k=k,
        u=u,
        S=S,
        degenerate=bool(vanishing),
        vanishing=tuple(vanishing),
        off_surface=off_surface,
        support=tuple(nz),
    )


# ---------------------------------------------------------------------------
# the Z locus
# ---------------------------------------------------------------------------


def z_member(x) -> bool:
    """True iff every coordinate is zero or agrees up to sign with some
    other coordinate.  Computed both from the ratio definition and from
    the binomial equations x_i^2 x_j - x_j^3; the two must agree."""
    coords = tuple(x.coords) if isinstance(x, ProjPoint) else tuple(int(c) for c in x)
    if len(coords) < 2:
        raise ValueError("need at least two coordinates")
    idx = range(len(coords))
    ratio = all(
        c == 0 or any(abs(c) == abs(coords[j]) for j in idx if j != i)
        for i, c in enumerate(coords)
    )
    scheme = all(
        any(coords[i] ** 2 * coords[j] - coords[j] ** 3 == 0 for i in idx if i != j)
        for j in idx
    )
    if ratio != scheme:
        raise AssertionError(f"Z-membership definitions disagree on {coords}")
    return ratio


def z_triviality_scan(B: int, threads: int | None = None) -> ScanReport:
    """Non-trivial surface points in the Z locus with three smallest
    coordinates <= B; expected empty (any hit is a finding, not an error)."""
    surf = scan_surface(B, threads)
    kept = tuple(
        p for p in surf.points if z_member(p) and not _is_trivial_point(p)
    )
    return ScanReport(
        B=B,
        strategy="three-two-split+z-filter",
        points=kept,
        trivial=(),
        nontrivial=kept,
        millis=surf.millis,
    )


# ---------------------------------------------------------------------------
# bounded S-unit oracle
# ---------------------------------------------------------------------------


def sunit_bounded(S, k: int, E: int, enumeration_cap: int = 2_000_000):
    """All k-tuples of S-units with exponents bounded by E summing to 1.

    A bounded oracle: complete inside the exponent box, silent about
    anything outside it.  k = 1 is allowed (the answer is [(1,)])."""
    primes = sorted(set(int(p) for p in S))
    for p in primes:
        if p < 2 or factorize(p) != {p: 1}:
            raise ValueError(f"S must consist of primes, got {p}")
    if k < 1 or E < 0:
        raise ValueError("k >= 1 and E >= 0 required")
    units = set()
    for expos in itertools.product(range(-E, E + 1), repeat=len(primes)):
        num = den = 1
        for p, e in zip(primes, expos):
            if e >= 0:
                num *= p**e
            else:
                den *= p**-e
        units.add(Fraction(num, den))
        units.add(Fraction(-num, den))
    units = sorted(units)
    if len(units) ** k > enumeration_cap:
        raise BudgetExceededError(
            f"S-unit box holds {len(units)}^{k} tuples; cap is {enumeration_cap}"
        )
    out = [
        tup
        for tup in itertools.product(units, repeat=k)
        if sum(tup) == 1
    ]
    out.sort()
    return out
