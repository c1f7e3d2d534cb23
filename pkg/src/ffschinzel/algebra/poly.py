"""Dense univariate polynomials over F_q in the variable ``t``.

Coefficients are F_q codes (see :mod:`.field`), constant term first,
without trailing zeros.  Over prime fields, large operands are handed to
FLINT's ``nmod_poly`` and kept in that form until the coefficients are
actually needed; everything else (and every extension field) runs the
pure-Python kernels below.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import flint

from ..errors import FieldMismatch
from .field import FieldSpec

NEG_INF = float("-inf")

# operand length (in coefficients) above which prime-field kernels use FLINT
_FLINT_MIN = 48


class Poly:
    """An immutable polynomial in F_q[t]."""

    __slots__ = ("spec", "_c", "_fl")

    def __init__(self, spec: FieldSpec, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.spec = spec
        self._c = tuple(c)
        self._fl = None

    @classmethod
    def _raw(cls, spec, c=None, fl=None) -> "Poly":
        obj = object.__new__(cls)
        obj.spec = spec
        obj._c = c
        obj._fl = fl
        return obj

    @classmethod
    def _trim(cls, spec, c: list) -> "Poly":
        while c and c[-1] == 0:
            c.pop()
        return cls._raw(spec, tuple(c))

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, spec):
        return cls._raw(spec, ())

    @classmethod
    def one(cls, spec):
        return cls._raw(spec, (1,))

    @classmethod
    def const(cls, spec, a: int):
        return cls._raw(spec, (a,) if a else ())

    @classmethod
    def t(cls, spec):
        return cls._raw(spec, (0, 1))

    @classmethod
    def from_ints(cls, spec, ints: Sequence[int]):
        """Integer coefficients reduced into the prime subfield."""
        p = spec.p
        return cls(spec, [n % p for n in ints])

    @classmethod
    def monomial(cls, spec, k: int, a: int = 1):
        return cls._raw(spec, (0,) * k + (a,)) if a else cls.zero(spec)

    # -- representation helpers -----------------------------------------
    @property
    def coeffs(self) -> tuple:
        c = self._c
        if c is None:
            c = self._c = tuple(map(int, self._fl.coeffs()))
        return c

    def _flint(self):
        fl = self._fl
        if fl is None:
            fl = self._fl = flint.nmod_poly(list(self._c), self.spec.p)
        return fl

    def _len(self) -> int:
        if self._c is not None:
            return len(self._c)
        return self._fl.degree() + 1

    def _use_flint(self, other: "Poly") -> bool:
        if self.spec.s != 1:
            return False
        if self._fl is not None or other._fl is not None:
            return True
        return len(self._c) + len(other._c) > 2 * _FLINT_MIN

    def _same(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.spec is not self.spec and other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")
        return other

    # -- basic queries --------------------------------------------------
    @property
    def degree(self):
        """Degree, with ``-inf`` for the zero polynomial."""
        n = self._len()
        return n - 1 if n else NEG_INF

    def deg(self) -> int:
        """Degree with ``-1`` for zero (handy in integer arithmetic)."""
        return self._len() - 1

    def is_zero(self) -> bool:
        return self._len() == 0

    def is_one(self) -> bool:
        return self._len() == 1 and self.lc == 1

    def is_constant(self) -> bool:
        return self._len() <= 1

    def is_monic(self) -> bool:
        return self._len() > 0 and self.lc == 1

    @property
    def lc(self) -> int:
        if self._c is not None:
            return self._c[-1] if self._c else 0
        fl = self._fl
        return int(fl[fl.degree()]) if fl.degree() >= 0 else 0

    def __getitem__(self, k: int) -> int:
        c = self.coeffs
        return c[k] if 0 <= k < len(c) else 0

    def lex_key(self) -> tuple:
        """Sort key: degree first, then coefficients from the top down."""
        c = self.coeffs
        return (len(c), c[::-1])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if self.spec != other.spec:
            return False
        if self._fl is not None and other._fl is not None:
            return self._fl == other._fl
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec.size, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Poly({self.to_text()})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        from .text import poly_to_text

        return poly_to_text(self)

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        if self._use_flint(other):
            return Poly._raw(self.spec, fl=self._flint() + other._flint())
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        if self.spec.s == 1:
            p = self.spec.p
            for i, y in enumerate(b):
                out[i] = (out[i] + y) % p
        else:
            tabs = self.spec.tables
            if tabs is not None:
                add_t = tabs[0]
                for i, y in enumerate(b):
                    out[i] = add_t[out[i]][y]
            else:
                add = self.spec.add
                for i, y in enumerate(b):
                    if y:
                        out[i] = add(out[i], y)
        return Poly._trim(self.spec, out)

    def __neg__(self):
        if self._c is None:
            return Poly._raw(self.spec, fl=-self._fl)
        if self.spec.s == 1:
            p = self.spec.p
            return Poly._raw(self.spec, tuple(-x % p for x in self._c))
        neg = self.spec.neg
        return Poly._raw(self.spec, tuple(neg(x) for x in self._c))

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        if self._use_flint(other):
            return Poly._raw(self.spec, fl=self._flint() - other._flint())
        return self + (-other)

    def scale(self, a: int) -> "Poly":
        """Multiply by the constant with code ``a``."""
        if a == 0:
            return Poly.zero(self.spec)
        if a == 1:
            return self
        if self._c is None:
            return Poly._raw(self.spec, fl=self._fl * a)
        if self.spec.s == 1:
            p = self.spec.p
            return Poly._raw(self.spec, tuple(x * a % p for x in self._c))
        mul = self.spec.mul
        return Poly._raw(self.spec, tuple(mul(x, a) for x in self._c))

    def __mul__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        if self._use_flint(other):
            return Poly._raw(self.spec, fl=self._flint() * other._flint())
        a, b = self._c, other._c
        if not a or not b:
            return Poly.zero(self.spec)
        out = [0] * (len(a) + len(b) - 1)
        if self.spec.s == 1:
            p = self.spec.p
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly._trim(self.spec, [x % p for x in out])
        tabs = self.spec.tables
        if tabs is not None:
            add_t, mul_t, _ = tabs
            for i, x in enumerate(a):
                if x:
                    row = mul_t[x]
                    for j, y in enumerate(b):
                        k = i + j
                        out[k] = add_t[out[k]][row[y]]
            return Poly._trim(self.spec, out)
        add, mul = self.spec.add, self.spec.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly._trim(self.spec, out)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent for a polynomial")
        result = Poly.one(self.spec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self._use_flint(other):
            q, r = divmod(self._flint(), other._flint())
            return Poly._raw(self.spec, fl=q), Poly._raw(self.spec, fl=r)
        a, b = list(self._c), other._c
        db = len(b) - 1
        if len(a) <= db:
            return Poly.zero(self.spec), self
        spec = self.spec
        quot = [0] * (len(a) - db)
        if spec.s == 1:
            p = spec.p
            inv = pow(b[-1], -1, p)
            for k in range(len(a) - 1, db - 1, -1):
                c = a[k] % p
                if c:
                    c = c * inv % p
                    quot[k - db] = c
                    off = k - db
                    for j in range(db):
                        a[off + j] -= c * b[j]
                a[k] = 0
            return Poly._trim(spec, quot), Poly._trim(spec, [x % p for x in a[:db]])
        inv = spec.inv(b[-1])
        tabs = spec.tables
        if tabs is not None:
            add_t, mul_t, neg_t = tabs
            nb = [neg_t[y] for y in b[:db]]
            for k in range(len(a) - 1, db - 1, -1):
                c = a[k]
                if c:
                    c = mul_t[c][inv]
                    quot[k - db] = c
                    off = k - db
                    row = mul_t[c]
                    for j in range(db):
                        a[off + j] = add_t[a[off + j]][row[nb[j]]]
                a[k] = 0
            return Poly._trim(spec, quot), Poly._trim(spec, a[:db])
        mul, sub = spec.mul, spec.sub
        for k in range(len(a) - 1, db - 1, -1):
            c = a[k]
            if c:
                c = mul(c, inv)
                quot[k - db] = c
                off = k - db
                for j in range(db):
                    if b[j]:
                        a[off + j] = sub(a[off + j], mul(c, b[j]))
            a[k] = 0
        return Poly._trim(spec, quot), Poly._trim(spec, a[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        lc = self.lc
        if lc in (0, 1):
            return self
        return self.scale(self.spec.inv(lc))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor (zero only when both are zero)."""
        other = self._same(other)
        if self._use_flint(other):
            g = Poly._raw(self.spec, fl=self._flint().gcd(other._flint()))
            return g.monic()
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def lcm(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.spec)
        return (self * (other // self.gcd(other))).monic()

    def powmod(self, e: int, m: "Poly") -> "Poly":
        if m.spec.s == 1 and m._len() > _FLINT_MIN // 2:
            base = self % m
            return Poly._raw(self.spec, fl=base._flint().pow_mod(e, m._flint()))
        result = Poly.one(self.spec) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def derivative(self) -> "Poly":
        c = self.coeffs
        spec = self.spec
        return Poly(spec, [spec.mul(spec.from_int(k), c[k]) for k in range(1, len(c))])

    def eval(self, x: int) -> int:
        """Horner evaluation at a constant-field element."""
        spec = self.spec
        acc = 0
        if spec.s == 1:
            p = spec.p
            for c in reversed(self.coeffs):
                acc = (acc * x + c) % p
            return acc
        add, mul = spec.add, spec.mul
        for c in reversed(self.coeffs):
            acc = add(mul(acc, x), c)
        return acc

    __call__ = eval

    def multiplicity(self, pi: "Poly") -> int:
        """Largest k with pi^k dividing self (self must be nonzero)."""
        if self.is_zero():
            raise ValueError("multiplicity in the zero polynomial is infinite")
        k = 0
        f = self
        while True:
            q, r = divmod(f, pi)
            if not r.is_zero():
                return k
            f = q
            k += 1
