"""Elliptic curves y^2 = x^3 + a x + b over K = F_q(t) (p >= 5).

Besides the group law over K this module handles reduction at places:
a place v is *admissible* when v(a) >= 0, v(b) >= 0 and the reduced
discriminant is nonzero.  At such a place the reduction map is a group
homomorphism and P reduces to the identity exactly when v(x(P)) < 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional, Tuple

from sympy import factorint

from .algebra import FieldSpec, Poly, RatFunc, poly_factor
from .errors import (
    BadCharacteristic,
    BadPlace,
    BudgetExceeded,
    NotEnoughPlaces,
    NotOnCurve,
    SingularCurve,
)
from .places import INFINITY, Place, finite_places, poly_residue, residue, residue_field, valuation

#: default cap on deg num / deg den of x(P) for points computed over K
DEFAULT_COORD_BUDGET = 20000
#: residue fields up to this size are enumerated for group orders
ENUMERATION_CAP = 4096
#: hard cap for explicit enumeration (residue_group_order)
ENUMERATION_HARD_CAP = 2**20

ReducedPoint = Optional[Tuple[int, int]]  # None is the identity


# -- curves over a finite field -------------------------------------------------
class ReducedCurve:
    """y^2 = x^3 + a x + b over a finite field (a reduction, or a constant curve).

    Points are ``(x, y)`` tuples of field codes, ``None`` for the identity.
    """

    def __init__(self, field, a: int, b: int, place: Place | None = None):
        self.field = field
        self.a = a
        self.b = b
        self.place = place
        F = field
        four_a3 = F.mul(F.from_int(4), F.pow(a, 3))
        tw_b2 = F.mul(F.from_int(27), F.mul(b, b))
        self.disc = F.mul(F.from_int(-16), F.add(four_a3, tw_b2))
        if self.disc == 0:
            raise SingularCurve("reduced discriminant vanishes")

    @property
    def size(self) -> int:
        """Size of the field of definition."""
        return self.field.size

    def rhs(self, x: int) -> int:
        F = self.field
        return F.add(F.mul(F.add(F.mul(x, x), self.a), x), self.b)

    def contains(self, P: ReducedPoint) -> bool:
        if P is None:
            return True
        x, y = P
        return self.field.mul(y, y) == self.rhs(x)

    def neg(self, P: ReducedPoint) -> ReducedPoint:
        if P is None:
            return None
        return (P[0], self.field.neg(P[1]))

    def add(self, P: ReducedPoint, Q: ReducedPoint) -> ReducedPoint:
        if P is None:
            return Q
        if Q is None:
            return P
        F = self.field
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if F.add(y1, y2) == 0:
                return None
            num = F.add(F.mul(F.from_int(3), F.mul(x1, x1)), self.a)
            lam = F.div(num, F.add(y1, y1))
        else:
            lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
        x3 = F.sub(F.sub(F.mul(lam, lam), x1), x2)
        y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
        return (x3, y3)

    def mul(self, n: int, P: ReducedPoint) -> ReducedPoint:
        if n < 0:
            n, P = -n, self.neg(P)
        R = None
        while n and P is not None:
            if n & 1:
                R = self.add(R, P)
            n >>= 1
            if n:
                P = self.add(P, P)
        return R

    def points(self) -> Iterator[ReducedPoint]:
        F = self.field
        roots: dict[int, list[int]] = {}
        for y in F.elements():
            roots.setdefault(F.mul(y, y), []).append(y)
        yield None
        for x in F.elements():
            for y in roots.get(self.rhs(x), ()):
                yield (x, y)

    def order(self, cap: int = ENUMERATION_HARD_CAP) -> int:
        """#E(F) by enumerating x and testing squares; satisfies the Hasse bound."""
        F = self.field
        if F.size > cap:
            raise BudgetExceeded(f"residue field of size {F.size} exceeds the enumeration cap {cap}")
        squares = {F.mul(y, y) for y in F.elements()}
        n = 1
        for x in F.elements():
            r = self.rhs(x)
            if r == 0:
                n += 1
            elif r in squares:
                n += 2
        return n

    def has_order(self, P: ReducedPoint, n: int) -> bool:
        """True iff P has order exactly n."""
        if self.mul(n, P) is not None:
            return False
        return all(self.mul(n // r, P) is not None for r in factorint(n))

    def _annihilator_bsgs(self, P: ReducedPoint) -> int:
        """Some M in the Hasse interval with M*P = O (baby-step giant-step)."""
        Q = self.size
        lo = Q + 1 - 2 * math.isqrt(Q) - 2
        hi = Q + 1 + 2 * math.isqrt(Q) + 2
        m = math.isqrt(hi - lo) + 1
        baby: dict = {}
        R = None
        for j in range(m):
            baby.setdefault(R, j)
            R = self.add(R, P)
        step = self.mul(m, P)
        G = self.mul(lo, P)
        k = lo
        while k <= hi + m:
            j = baby.get(self.neg(G))
            if j is not None and k + j > 0:
                return k + j
            G = self.add(G, step)
            k += m
        raise ArithmeticError("no annihilator in the Hasse interval; is the curve correct?")

    def point_order(self, P: ReducedPoint) -> int:
        """Exact order of P: strip primes from #E (small fields) or a BSGS multiple."""
        if P is None:
            return 1
        if self.size <= ENUMERATION_CAP:
            n = self.order()
        else:
            n = self._annihilator_bsgs(P)
        for r in factorint(n):
            while n % r == 0 and self.mul(n // r, P) is None:
                n //= r
        return n


def hasse_coefficient(a, b, p: int, one, from_int=None):
    """Coefficient of x^(p-1) in (x^3 + a x + b)^((p-1)/2).

    Expands with multinomials: terms x^(3i+j) a^j b^k with i+j+k = (p-1)/2.
    ``a``, ``b`` may be field codes (pass ``one`` and the field's int map
    via ``from_int`` plus arithmetic objects) or RatFuncs.
    """
    m = (p - 1) // 2
    total = None
    for j in range(0, p):
        rest = p - 1 - j
        if rest % 3:
            continue
        i = rest // 3
        k = m - i - j
        if k < 0:
            continue
        coef = math.factorial(m) // (math.factorial(i) * math.factorial(j) * math.factorial(k))
        term = from_int(coef) * (a**j) * (b**k)
        total = term if total is None else total + term
    return total if total is not None else from_int(0)


class _FieldElem:
    """Tiny operator wrapper so hasse_coefficient can run over a finite field."""

    __slots__ = ("F", "v")

    def __init__(self, F, v):
        self.F, self.v = F, v

    def __mul__(self, o):
        return _FieldElem(self.F, self.F.mul(self.v, o.v))

    def __add__(self, o):
        return _FieldElem(self.F, self.F.add(self.v, o.v))

    def __pow__(self, e):
        return _FieldElem(self.F, self.F.pow(self.v, e))


def hasse_invariant(a: int, b: int, field) -> tuple[int, bool]:
    """(coefficient of x^(p-1), is_supersingular) for a curve over a finite field."""
    p = field.p
    if p < 5:
        raise BadCharacteristic("the Hasse coefficient test needs p >= 5")
    A, B = _FieldElem(field, a), _FieldElem(field, b)
    c = hasse_coefficient(A, B, p, None, lambda n: _FieldElem(field, field.from_int(n))).v
    return c, c == 0


# -- curves over K -------------------------------------------------------------------
@dataclass(frozen=True)
class PointK:
    """An affine point (x, y) over K, or the identity when both are None."""

    x: Optional[RatFunc] = None
    y: Optional[RatFunc] = None

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.x is None:
            return "O"
        return f"({self.x}, {self.y})"


IDENTITY = PointK()


class CurveK:
    """y^2 = x^3 + a x + b over F_q(t) with nonzero discriminant -16(4a^3 + 27b^2)."""

    def __init__(self, a: RatFunc, b: RatFunc):
        spec = a.spec
        if b.spec != spec:
            raise ValueError("coefficients from different fields")
        if spec.p in (2, 3):
            raise BadCharacteristic("characteristic 2 and 3 are not supported")
        self.a = a
        self.b = b
        self.spec: FieldSpec = spec
        self.disc = (a**3 * 4 + b * b * 27) * (-16)
        if self.disc.is_zero():
            raise SingularCurve(f"y^2 = x^3 + ({a})*x + ({b}) is singular")

    def __eq__(self, other):
        return isinstance(other, CurveK) and (self.a, self.b) == (other.a, other.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __str__(self):
        return f"y^2 = x^3 + ({self.a})*x + ({self.b})"

    __repr__ = __str__

    def contains(self, P: PointK) -> bool:
        if P.is_identity:
            return True
        x, y = P.x, P.y
        return y * y == x * x * x + self.a * x + self.b

    @cached_property
    def bad_poly(self) -> Poly:
        """Product whose prime factors are exactly the inadmissible finite places."""
        return self.a.den * self.b.den * self.disc.num

    def is_admissible(self, v: Place) -> bool:
        if v.pi is None:
            return (
                valuation(self.a, v) >= 0
                and valuation(self.b, v) >= 0
                and valuation(self.disc, v) == 0
            )
        return not (self.bad_poly % v.pi).is_zero()


def curve_make(a: RatFunc, b: RatFunc) -> CurveK:
    return CurveK(a, b)


def _check_budget(P: PointK, budget: int | None) -> None:
    if budget is not None and not P.is_identity:
        if P.x.height_degree() > budget:
            raise BudgetExceeded(f"x-coordinate degree {P.x.height_degree()} exceeds {budget}")


def _require_on(E: CurveK, *points: PointK) -> None:
    for P in points:
        if not E.contains(P):
            raise NotOnCurve(f"{P} is not on {E}")


def _neg(P: PointK) -> PointK:
    return P if P.is_identity else PointK(P.x, -P.y)


def _add(E: CurveK, P: PointK, Q: PointK) -> PointK:
    if P.is_identity:
        return Q
    if Q.is_identity:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if (y1 + y2).is_zero():
            return IDENTITY
        lam = (x1 * x1 * 3 + E.a) / (y1 * 2)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return PointK(x3, y3)


def point_neg(E: CurveK, P: PointK) -> PointK:
    _require_on(E, P)
    return _neg(P)


def point_add(E: CurveK, P: PointK, Q: PointK) -> PointK:
    _require_on(E, P, Q)
    return _add(E, P, Q)


def point_mul(E: CurveK, n: int, P: PointK, budget: int | None = DEFAULT_COORD_BUDGET) -> PointK:
    """n*P by double-and-add; raises BudgetExceeded past the coordinate budget."""
    _require_on(E, P)
    if n < 0:
        n, P = -n, _neg(P)
    R = IDENTITY
    while n and not P.is_identity:
        if n & 1:
            R = _add(E, R, P)
            _check_budget(R, budget)
        n >>= 1
        if n:
            P = _add(E, P, P)
            _check_budget(P, budget)
    return R


class Multiples:
    """Lazily computed table [0P, 1P, 2P, ...] for one point (a per-call workspace)."""

    def __init__(self, E: CurveK, P: PointK, budget: int | None = DEFAULT_COORD_BUDGET):
        _require_on(E, P)
        self.E, self.P, self.budget = E, P, budget
        self._table = [IDENTITY, P]

    def __getitem__(self, n: int) -> PointK:
        if n < 0:
            return _neg(self[-n])
        t = self._table
        while len(t) <= n:
            R = _add(self.E, t[-1], self.P)
            _check_budget(R, self.budget)
            t.append(R)
        return t[n]


# -- heights -----------------------------------------------------------------------------
def local_height(E: CurveK, P: PointK, v: Place) -> int:
    """-min(0, v(x), v(y)); not weighted by deg(v)."""
    if P.is_identity:
        return 0
    return -min(0, valuation(P.x, v), valuation(P.y, v))


def weil_height(E: CurveK, P: PointK) -> int:
    """sum_v deg(v) * local_height(P, v).

    Finite poles contribute deg lcm(den x, den y) in one go; no factoring.
    """
    if P.is_identity:
        return 0
    x, y = P.x, P.y
    finite = x.den.lcm(y.den).deg()
    at_inf = max(0, x.num.deg() - x.den.deg(), y.num.deg() - y.den.deg())
    return finite + at_inf


def canonical_height_estimate(
    E: CurveK, P: PointK, k: int, budget: int | None = DEFAULT_COORD_BUDGET
) -> Fraction:
    """h(2^k P) / 4^k as an exact rational."""
    _require_on(E, P)
    Q = P
    for _ in range(k):
        Q = _add(E, Q, Q)
        _check_budget(Q, budget)
    return Fraction(weil_height(E, Q), 4**k)


def formal_parameter(P: PointK) -> RatFunc:
    """z = -x/y, the formal-group coordinate near the identity."""
    return -(P.x / P.y)


# -- reduction -------------------------------------------------------------------------------
def bad_set_S(E: CurveK) -> list[Place]:
    """Infinity, the zeros and poles of a and b (when nonzero), and zeros of disc."""
    polys = []
    for c in (E.a, E.b):
        if not c.is_zero():
            polys += [c.num, c.den]
    polys += [E.disc.num, E.disc.den]
    out = {INFINITY}
    for f in polys:
        if f.deg() > 0:
            out.update(Place(g) for g, _ in poly_factor(f))
    return sorted(out, key=Place.sort_key)


def _require_admissible(E: CurveK, v: Place) -> None:
    if not E.is_admissible(v):
        raise BadPlace(f"{v} is not an admissible place for {E}")


def reduced_curve(E: CurveK, v: Place) -> ReducedCurve:
    _require_admissible(E, v)
    field = residue_field(v, E.spec)
    return ReducedCurve(field, residue(E.a, v), residue(E.b, v), place=v)


def reduce_point(E: CurveK, P: PointK, v: Place) -> ReducedPoint:
    """Image of P at an admissible place; None (identity) iff v(x) < 0."""
    _require_admissible(E, v)
    if P.is_identity or valuation(P.x, v) < 0:
        return None
    return (residue(P.x, v), residue(P.y, v))


def _fast_reduce(rc: ReducedCurve, P: PointK, v: Place) -> ReducedPoint:
    # assumes admissibility was already checked; avoids repeated valuations
    if P.is_identity:
        return None
    x = P.x
    if (x.den % v.pi).is_zero():
        return None
    F = rc.field
    xr = F.div(poly_residue(x.num, v, F), poly_residue(x.den, v, F))
    y = P.y
    yr = F.div(poly_residue(y.num, v, F), poly_residue(y.den, v, F))
    return (xr, yr)


def residue_group_order(E: CurveK, v: Place, cap: int = ENUMERATION_HARD_CAP) -> int:
    return reduced_curve(E, v).order(cap)


def reduced_point_order(E: CurveK, P: PointK, v: Place) -> int:
    rc = reduced_curve(E, v)
    return rc.point_order(reduce_point(E, P, v))


def is_ordinary_generic(E: CurveK) -> bool:
    """Nonvanishing of the x^(p-1) coefficient of (x^3+ax+b)^((p-1)/2) in K."""
    spec = E.spec
    c = hasse_coefficient(E.a, E.b, spec.p, None, lambda n: RatFunc.from_int(spec, n))
    return not c.is_zero()


def admissible_places(E: CurveK, max_degree: int) -> Iterator[Place]:
    for v in finite_places(E.spec, max_degree):
        if E.is_admissible(v):
            yield v


def is_torsion(
    E: CurveK, P: PointK, max_degree: int = 6, max_places: int = 8
) -> tuple[bool, int | None]:
    """Decide torsion exactly using reductions at small admissible places.

    Torsion injects into every good reduction (the formal group is
    torsion-free in equal characteristic), so a torsion point has the same
    reduced order everywhere.  Two different reduced orders prove infinite
    order; otherwise the common order m is checked as m*P = O over K.
    """
    _require_on(E, P)
    if P.is_identity:
        return True, 1
    orders = []
    for v in admissible_places(E, max_degree):
        rc = reduced_curve(E, v)
        if rc.size > ENUMERATION_CAP:
            break
        orders.append(rc.point_order(reduce_point(E, P, v)))
        if len(set(orders)) > 1:
            return False, None
        if len(orders) >= 2:
            m = orders[0]
            if point_mul(E, m, P, budget=None).is_identity:
                return True, m
            return False, None
        if len(orders) >= max_places:
            break
    raise NotEnoughPlaces("fewer than two admissible places with enumerable residue fields")
