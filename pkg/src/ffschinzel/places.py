"""Places of K = F_q(t): valuations, residue maps, the product formula and heights.

Every global sum weights a place by its degree, i.e. the normalized
absolute value is ``|f|_v = q^(-deg(v) * v(f))``.  With that choice the
product formula holds and ``h([f : 1]) = deg f`` for polynomials; heights
are measured with log base q and are therefore integers.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache
from typing import Iterator, Sequence

from .algebra import ExtensionField, FieldSpec, Poly, RatFunc, irreducibles_stream, poly_factor
from .errors import NegativeValuation

INF_VAL = math.inf


class Place:
    """A finite place (monic irreducible ``pi``) or the infinite place (``pi=None``).

    Places sort with the infinite place first, then by (degree, lex).
    """

    __slots__ = ("pi",)

    def __init__(self, pi: Poly | None = None):
        if pi is not None and not pi.is_monic():
            raise ValueError("a finite place needs a monic polynomial")
        self.pi = pi

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.pi is None

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else self.pi.deg()

    def sort_key(self) -> tuple:
        if self.pi is None:
            return (0,)
        return (1,) + self.pi.lex_key()

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "Place") -> bool:
        return self.sort_key() <= other.sort_key()

    def __eq__(self, other):
        return isinstance(other, Place) and self.pi == other.pi

    def __hash__(self):
        return hash(("place", self.pi))

    def __str__(self):
        return "inf" if self.pi is None else f"({self.pi.to_text()})"

    def __repr__(self):
        return f"Place({self})"


INFINITY = Place(None)


def places_of_degree(spec: FieldSpec, d: int) -> Iterator[Place]:
    for pi in irreducibles_stream(spec, d):
        yield Place(pi)


def finite_places(spec: FieldSpec, max_degree: int) -> Iterator[Place]:
    """Finite places of degree <= max_degree in the global ordering."""
    for d in range(1, max_degree + 1):
        yield from places_of_degree(spec, d)


# -- valuations ---------------------------------------------------------------
def poly_valuation(f: Poly, v: Place):
    if f.is_zero():
        return INF_VAL
    if v.pi is None:
        return -f.deg()
    return f.multiplicity(v.pi)


def valuation(f: RatFunc, v: Place):
    """Order of vanishing of f at v (``math.inf`` for f = 0)."""
    if f.is_zero():
        return INF_VAL
    if v.pi is None:
        return f.den.deg() - f.num.deg()
    if f.den.deg() >= v.pi.deg():
        k = f.den.multiplicity(v.pi)
        if k:
            return -k
    return f.num.multiplicity(v.pi)


# -- residue fields -------------------------------------------------------------
@lru_cache(maxsize=8192)
def residue_field(v: Place, spec: FieldSpec):
    """F_q itself for degree-one places, else F_q[t]/(pi) with base-q codes."""
    if v.pi is None or v.pi.deg() == 1:
        return spec
    return ExtensionField(spec, v.pi.coeffs)


def poly_residue(f: Poly, v: Place, field=None) -> int:
    """Image of a polynomial that is integral at v (finite v only)."""
    pi = v.pi
    if pi.deg() == 1:
        return f.eval(f.spec.neg(pi.coeffs[0]))
    if field is None:
        field = residue_field(v, f.spec)
    r = f % pi
    return field.pack(list(r.coeffs) + [0] * (pi.deg() - len(r.coeffs)))


def residue(f: RatFunc, v: Place) -> int:
    """Reduction of f modulo the place, as a code in ``residue_field(v)``."""
    spec = f.spec
    val = valuation(f, v)
    if val < 0:
        raise NegativeValuation(f"{f} has a pole of order {-val} at {v}")
    if f.is_zero():
        return 0
    if v.pi is None:
        if f.num.deg() < f.den.deg():
            return 0
        return spec.div(f.num.lc, f.den.lc)
    if val > 0:
        return 0
    field = residue_field(v, spec)
    return field.div(poly_residue(f.num, v, field), poly_residue(f.den, v, field))


def residue_to_poly(code: int, v: Place, spec: FieldSpec) -> Poly:
    """Representative of degree < deg(v) for a residue code."""
    field = residue_field(v, spec)
    if field is spec:
        return Poly.const(spec, code)
    return Poly(spec, field.digits(code))


# -- global sums ------------------------------------------------------------------
def support(f: RatFunc, rng: random.Random | None = None) -> list[tuple[Place, int]]:
    """All (place, v(f)) with v(f) != 0, in the global place ordering."""
    if f.is_zero():
        raise ValueError("the zero function has no divisor")
    out = []
    vinf = f.den.deg() - f.num.deg()
    if vinf:
        out.append((INFINITY, vinf))
    for g, k in poly_factor(f.num, rng) if f.num.deg() > 0 else []:
        out.append((Place(g), k))
    for g, k in poly_factor(f.den, rng) if f.den.deg() > 0 else []:
        out.append((Place(g), -k))
    out.sort(key=lambda pv: pv[0].sort_key())
    return out


def product_formula_defect(f: RatFunc, rng: random.Random | None = None) -> int:
    """sum_v deg(v) * v(f) over the factored divisor of f; zero for every f != 0."""
    return sum(v.degree * k for v, k in support(f, rng))


def _clear_denominators(coords: Sequence[RatFunc]) -> list[Poly]:
    spec = coords[0].spec
    lcm = Poly.one(spec)
    for c in coords:
        lcm = lcm.lcm(c.den)
    return [c.num * (lcm // c.den) for c in coords]


def projective_height(coords: Sequence[RatFunc]) -> int:
    """h_K([x_0 : ... : x_n]) = -sum_v deg(v) * min_i v(x_i).

    After clearing denominators to coprime-free polynomial coordinates P_i
    the finite places contribute -deg gcd(P_i) and infinity contributes
    max deg P_i.
    """
    if not coords or all(c.is_zero() for c in coords):
        raise ValueError("projective point with all coordinates zero")
    polys = _clear_denominators(coords)
    g = Poly.zero(coords[0].spec)
    for P in polys:
        g = g.gcd(P)
    return max(P.deg() for P in polys) - g.deg()
