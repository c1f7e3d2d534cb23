"""Elements of K = F_q(t) as reduced fractions with monic denominators."""

from __future__ import annotations

from .field import FieldSpec
from .poly import Poly


class RatFunc:
    """``num/den`` with ``gcd(num, den) = 1`` and ``den`` monic; zero is ``0/1``."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.spec)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = num, Poly.one(num.spec)
        else:
            g = num.gcd(den)
            if not g.is_one():
                num, den = num // g, den // g
            lc = den.lc
            if lc != 1:
                inv = num.spec.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, spec: FieldSpec):
        return cls._raw(Poly.zero(spec), Poly.one(spec))

    @classmethod
    def one(cls, spec: FieldSpec):
        return cls._raw(Poly.one(spec), Poly.one(spec))

    @classmethod
    def const(cls, spec: FieldSpec, a: int):
        return cls._raw(Poly.const(spec, a), Poly.one(spec))

    @classmethod
    def from_int(cls, spec: FieldSpec, n: int):
        return cls.const(spec, spec.from_int(n))

    @classmethod
    def t(cls, spec: FieldSpec):
        return cls._raw(Poly.t(spec), Poly.one(spec))

    @classmethod
    def from_poly(cls, f: Poly):
        return cls._raw(f, Poly.one(f.spec))

    @property
    def spec(self) -> FieldSpec:
        return self.num.spec

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.lc

    def height_degree(self) -> int:
        """max(deg num, deg den): the degree of f as a map to P^1."""
        return max(self.num.deg(), self.den.deg())

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        from .text import ratfunc_to_text

        return ratfunc_to_text(self)

    # -- arithmetic (Henrici's gcd-saving formulas) -------------------------
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        if isinstance(other, int):
            return RatFunc.from_int(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero():
            return other
        if c.is_zero():
            return self
        if b.is_one() and d.is_one():
            return RatFunc._raw(a + c, b)
        g = b.gcd(d)
        if g.is_one():
            return RatFunc._raw(a * d + c * b, b * d)
        b1, d1 = b // g, d // g
        num = a * d1 + c * b1
        if num.is_zero():
            return RatFunc.zero(self.spec)
        g2 = num.gcd(g)
        if g2.is_one():
            return RatFunc._raw(num, b1 * d)
        return RatFunc._raw(num // g2, b1 * (d // g2))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return RatFunc.zero(self.spec)
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if not g1.is_one():
            a, d = a // g1, d // g1
        if not g2.is_one():
            c, b = c // g2, b // g2
        return RatFunc._raw(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q(t)")
        lc = self.num.lc
        inv = self.spec.inv(lc)
        return RatFunc._raw(self.den.scale(inv), self.num.scale(inv))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        # numerator and denominator stay coprime under powers
        return RatFunc._raw(self.num**e, self.den**e)

    def scale(self, a: int) -> "RatFunc":
        if a == 0:
            return RatFunc.zero(self.spec)
        return RatFunc._raw(self.num.scale(a), self.den)
