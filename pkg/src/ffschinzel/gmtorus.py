"""The multiplicative group of K and norm-one tori u^2 - d w^2 = 1.

A torus point reduces at a place v when v(d) = 0 and u, w have no pole
there.  The reduced group is cyclic of order Q - 1 when d mod v is a square
in the residue field (size Q) and of order Q + 1 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import divisors, factorint
from sympy import mobius as _mobius

from .algebra import FieldSpec, Poly, RatFunc, cyclotomic_poly, poly_factor
from .errors import BadCharacteristic, BadPlace, FieldError, NotEnoughPlaces, NotOnCurve, PDividesN
from .places import INFINITY, Place, finite_places, residue, residue_field, valuation


def _check_n(n: int, spec: FieldSpec) -> None:
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n % spec.p == 0:
        raise PDividesN(f"p = {spec.p} divides n = {n}")


def _check_nonconstant(x: RatFunc) -> None:
    if x.is_constant():
        raise ValueError("x must be nonconstant (constants are 0 or roots of unity)")


def cyclotomic_valuation(x: RatFunc, n: int, v: Place) -> int:
    """sum_{m | n} mu(n/m) * v(x^m - 1)."""
    _check_nonconstant(x)
    _check_n(n, x.spec)
    one = RatFunc.one(x.spec)
    return sum(int(_mobius(n // m)) * valuation(x**m - one, v) for m in divisors(n))


def cyclotomic_value(x: RatFunc, n: int) -> RatFunc:
    """Phi_n(x) evaluated in K by Horner's rule."""
    phi = cyclotomic_poly(n, x.spec)
    acc = RatFunc.zero(x.spec)
    for c in reversed(phi.coeffs):
        acc = acc * x + RatFunc.const(x.spec, c)
    return acc


def mult_order_mod(x: RatFunc, v: Place) -> int:
    """Order of x mod v in the multiplicative group of the residue field."""
    if x.is_zero() or valuation(x, v) != 0:
        raise BadPlace(f"{x} is not a unit at {v}")
    return residue_field(v, x.spec).mult_order(residue(x, v))


def _is_square_K(d: RatFunc) -> bool:
    # d = c * num/den with monic num, den; a square iff c is a square in F_q
    # and every irreducible factor occurs to an even power
    spec = d.spec
    if not spec.is_square(d.num.lc):
        return False
    for f in (d.num, d.den):
        if f.deg() > 0 and any(k % 2 for _, k in poly_factor(f)):
            return False
    return True


@dataclass(frozen=True)
class TorusSpec:
    """The norm-one torus u^2 - d w^2 = 1 attached to K(sqrt d)."""

    d: RatFunc

    def __post_init__(self):
        if self.d.spec.p == 2:
            raise BadCharacteristic("tori need p != 2")
        if self.d.is_zero():
            raise ValueError("d must be nonzero")
        if _is_square_K(self.d):
            raise FieldError(f"{self.d} is a square in K; the torus would be split")

    @property
    def spec(self) -> FieldSpec:
        return self.d.spec

    def contains(self, P: "TorusPoint") -> bool:
        return P.u * P.u - self.d * P.w * P.w == RatFunc.one(self.spec)

    def identity(self) -> "TorusPoint":
        return TorusPoint(RatFunc.one(self.spec), RatFunc.zero(self.spec))

    def __str__(self):
        return f"norm1(d = {self.d})"


@dataclass(frozen=True)
class TorusPoint:
    u: RatFunc
    w: RatFunc

    def __str__(self):
        return f"({self.u}, {self.w})"


def _require_on(T: TorusSpec, P: TorusPoint) -> None:
    if not T.contains(P):
        raise NotOnCurve(f"{P} does not satisfy u^2 - d*w^2 = 1")


def _tmul(d, P: TorusPoint, Q: TorusPoint) -> TorusPoint:
    return TorusPoint(P.u * Q.u + d * P.w * Q.w, P.u * Q.w + Q.u * P.w)


def torus_compose(T: TorusSpec, P: TorusPoint, Q: TorusPoint) -> TorusPoint:
    _require_on(T, P)
    _require_on(T, Q)
    return _tmul(T.d, P, Q)


def torus_mul(T: TorusSpec, n: int, P: TorusPoint) -> TorusPoint:
    """P^n by square-and-multiply; n < 0 uses the inverse (u, -w)."""
    _require_on(T, P)
    if n < 0:
        n, P = -n, TorusPoint(P.u, -P.w)
    R = T.identity()
    while n:
        if n & 1:
            R = _tmul(T.d, R, P)
        n >>= 1
        if n:
            P = _tmul(T.d, P, P)
    return R


# -- reduction ------------------------------------------------------------------
def torus_admissible(T: TorusSpec, P: TorusPoint, v: Place) -> bool:
    return valuation(T.d, v) == 0 and valuation(P.u, v) >= 0 and valuation(P.w, v) >= 0


class ReducedTorus:
    """u^2 - d w^2 = 1 over a finite field of odd characteristic."""

    def __init__(self, field, d: int):
        if d == 0:
            raise BadPlace("d reduces to zero")
        self.field = field
        self.d = d
        self.split = field.is_square(d)
        self.order = field.size - 1 if self.split else field.size + 1

    def mul(self, P, Q):
        F = self.field
        u1, w1 = P
        u2, w2 = Q
        return (
            F.add(F.mul(u1, u2), F.mul(self.d, F.mul(w1, w2))),
            F.add(F.mul(u1, w2), F.mul(u2, w1)),
        )

    def pow(self, P, n: int):
        R = (1, 0)
        while n:
            if n & 1:
                R = self.mul(R, P)
            n >>= 1
            if n:
                P = self.mul(P, P)
        return R

    def contains(self, P) -> bool:
        F = self.field
        u, w = P
        return F.sub(F.mul(u, u), F.mul(self.d, F.mul(w, w))) == 1

    def points(self):
        F = self.field
        for u in F.elements():
            for w in F.elements():
                if self.contains((u, w)):
                    yield (u, w)

    def point_order(self, P) -> int:
        n = self.order
        for r, e in factorint(n).items():
            for _ in range(e):
                if self.pow(P, n // r) == (1, 0):
                    n //= r
                else:
                    break
        return n


def reduced_torus(T: TorusSpec, v: Place) -> ReducedTorus:
    if valuation(T.d, v) != 0:
        raise BadPlace(f"v(d) != 0 at {v}")
    return ReducedTorus(residue_field(v, T.spec), residue(T.d, v))


def reduce_torus_point(T: TorusSpec, P: TorusPoint, v: Place) -> tuple[int, int]:
    if not torus_admissible(T, P, v):
        raise BadPlace(f"{v} is not admissible for {P} on {T}")
    return residue(P.u, v), residue(P.w, v)


def torus_order_mod(T: TorusSpec, P: TorusPoint, v: Place) -> int:
    """Exact order of P mod v (split: divides Q-1, non-split: divides Q+1)."""
    _require_on(T, P)
    Pbar = reduce_torus_point(T, P, v)
    return reduced_torus(T, v).point_order(Pbar)


def torus_admissible_places(T: TorusSpec, P: TorusPoint, max_degree: int):
    """Admissible places in the global order, Infinity first when admissible."""
    if torus_admissible(T, P, INFINITY):
        yield INFINITY
    for v in finite_places(T.spec, max_degree):
        if torus_admissible(T, P, v):
            yield v


def torus_is_torsion(
    T: TorusSpec, P: TorusPoint, max_degree: int = 6
) -> tuple[bool, int | None]:
    """Same scheme as elliptic torsion testing.

    Torsion points of the torus are roots of unity in K(sqrt d) and keep
    their order under reduction, so two distinct reduced orders prove
    infinite order; equal orders m are settled by computing P^m over K.
    """
    _require_on(T, P)
    orders = []
    for v in torus_admissible_places(T, P, max_degree):
        orders.append(torus_order_mod(T, P, v))
        if len(set(orders)) > 1:
            return False, None
        if len(orders) == 2:
            m = orders[0]
            if torus_mul(T, m, P) == T.identity():
                return True, m
            return False, None
    raise NotEnoughPlaces("fewer than two admissible places for the torus point")

