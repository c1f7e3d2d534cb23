"""Finite fields F_q, q = p^s, with elements encoded as small integers.

An element of F_{p^s} is stored as the integer ``sum(c_i * p**i)`` where
``c_0, ..., c_{s-1}`` are its coordinates in the power basis of the
generator ``u`` (a root of ``FieldSpec.modulus``).  The same encoding is
used one level up for residue fields F_q[t]/(pi): the digits are then
F_q codes in base q.  Plain ``int`` codes keep polynomial kernels fast.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from sympy import factorint, isprime

from ..errors import FieldError, FieldTooLarge, NotPrime

#: largest field size accepted by :func:`field_make`
DEFAULT_Q_LIMIT = 2**20

# log/Zech tables are built once a field has done this many multiplications
# per element; below that direct polynomial arithmetic is cheaper.
_TABLE_CAP = 2**20


class _FieldOps:
    """Operations shared by prime fields and extension fields."""

    size: int
    p: int

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return n % self.p

    def elements(self) -> range:
        return range(self.size)

    def is_square(self, a: int) -> bool:
        if self.p == 2:
            raise FieldError("square test is not supported in characteristic 2")
        if a == 0:
            return True
        return self.pow(a, (self.size - 1) // 2) == 1

    def mult_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n = self.size - 1
        for r, e in factorint(n).items():
            for _ in range(e):
                if self.pow(a, n // r) == 1:
                    n //= r
                else:
                    break
        return n


class PrimeField(_FieldOps):
    """Arithmetic modulo a prime; codes are residues in [0, p)."""

    s = 1

    def __init__(self, p: int):
        self.p = p
        self.size = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)


class ExtensionField(_FieldOps):
    """The field base[u]/(modulus(u)) for a monic irreducible ``modulus``.

    ``modulus`` lists base-field codes from the constant term upward.
    Irreducibility is the caller's responsibility.
    """

    def __init__(self, base: _FieldOps, modulus: Sequence[int]):
        if modulus[-1] != 1:
            raise FieldError("modulus must be monic")
        self.base = base
        self.p = base.p
        self.modulus = tuple(modulus)
        self.d = len(modulus) - 1
        self.size = base.size**self.d
        self._prime_base = isinstance(base, PrimeField)
        self._ops = 0
        self._log: list[int] | None = None

    # -- digit conversion -------------------------------------------------
    def digits(self, a: int) -> list[int]:
        q = self.base.size
        out = []
        for _ in range(self.d):
            a, r = divmod(a, q)
            out.append(r)
        return out

    def pack(self, digits: Iterable[int]) -> int:
        q = self.base.size
        code = 0
        for c in reversed(list(digits)):
            code = code * q + c
        return code

    # -- direct arithmetic --------------------------------------------------
    def _add_direct(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        if self._prime_base:
            p = self.p
            return self.pack((x + y) % p for x, y in zip(da, db))
        add = self.base.add
        return self.pack(add(x, y) for x, y in zip(da, db))

    def _neg_direct(self, a: int) -> int:
        neg = self.base.neg
        return self.pack(neg(x) for x in self.digits(a))

    def _mul_direct(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        d = self.d
        m = self.modulus
        if self._prime_base:
            p = self.p
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] += x * y
            for k in range(2 * d - 2, d - 1, -1):
                c = prod[k] % p
                if c:
                    for j in range(d):
                        prod[k - d + j] -= c * m[j]
            return self.pack(c % p for c in prod[:d])
        base = self.base
        add, mul, sub = base.add, base.mul, base.sub
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = add(prod[i + j], mul(x, y))
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                for j in range(d):
                    if m[j]:
                        prod[k - d + j] = sub(prod[k - d + j], mul(c, m[j]))
        return self.pack(prod[:d])

    def _maybe_build_tables(self) -> None:
        self._ops += 1
        if self._ops > self.size and self.size <= _TABLE_CAP and self._log is None:
            self._build_tables()

    def _build_tables(self) -> None:
        n = self.size - 1
        primes = list(factorint(n)) if n > 1 else []
        g = None
        for cand in range(1, self.size):
            if all(self._pow_direct(cand, n // r) != 1 for r in primes):
                g = cand
                break
        assert g is not None, "no primitive element: modulus not irreducible?"
        exp = [0] * (2 * n)
        log = [0] * self.size
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = self._mul_direct(x, g)
        if x != 1 or len(set(exp[:n])) != n:
            raise FieldError("modulus is not irreducible (multiplicative group not cyclic)")
        exp[n:] = exp[:n]
        zech = [-1] * n
        for k in range(n):
            s = self._add_direct(1, exp[k])
            zech[k] = log[s] if s else -1
        self._exp, self._zech = exp, zech
        self._half = n // 2 if self.p != 2 else 0
        self._log = log

    def _pow_direct(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_direct(result, a)
            e >>= 1
            if e:
                a = self._mul_direct(a, a)
        return result

    # -- public arithmetic --------------------------------------------------
    def add(self, a, b):
        log = self._log
        if log is None:
            return self._add_direct(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = log[a], log[b]
        n = self.size - 1
        z = self._zech[(lb - la) % n]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if a == 0 or self.p == 2:
            return a
        log = self._log
        if log is None:
            return self._neg_direct(a)
        return self._exp[log[a] + self._half]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        log = self._log
        if log is None:
            self._maybe_build_tables()
            if self._log is None:
                return self._mul_direct(a, b)
            log = self._log
        return self._exp[log[a] + log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.size)
        log = self._log
        if log is None:
            return self.pow(a, self.size - 2)
        n = self.size - 1
        return self._exp[(n - log[a]) % n]


class FieldSpec(_FieldOps):
    """The constant field F_q with q = p^s.

    ``modulus`` is the defining polynomial of F_q over F_p (constant term
    first) when ``s > 1`` and ``None`` for prime fields.  Elements are
    integer codes; see the module docstring.
    """

    def __init__(self, p: int, s: int = 1, modulus: Sequence[int] | None = None):
        self.p = p
        self.s = s
        self.size = p**s
        if s == 1:
            self.modulus = None
            self._impl: _FieldOps = PrimeField(p)
        else:
            if modulus is None or len(modulus) != s + 1:
                raise FieldError("a degree-%d modulus is required for s=%d" % (s, s))
            self.modulus = tuple(int(c) % p for c in modulus)
            self._impl = ExtensionField(PrimeField(p), self.modulus)
        impl = self._impl
        self.add, self.sub, self.neg = impl.add, impl.sub, impl.neg
        self.mul, self.inv, self.pow = impl.mul, impl.inv, impl.pow

    @property
    def q(self) -> int:
        return self.size

    @cached_property
    def tables(self):
        """Full (add, mul, neg) lookup tables for small extension fields, else None."""
        if self.s == 1 or self.size > 256:
            return None
        r = range(self.size)
        add = [[self._impl.add(a, b) for b in r] for a in r]
        mul = [[self._impl.mul(a, b) for b in r] for a in r]
        neg = [self._impl.neg(a) for a in r]
        return add, mul, neg

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.s, self.modulus) == (other.p, other.s, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.s, self.modulus))

    def __repr__(self):
        return f"GF({self.size})"

    __str__ = __repr__

    def coeffs(self, a: int) -> list[int]:
        """Coordinates of ``a`` over F_p in the power basis (length s)."""
        out = []
        for _ in range(self.s):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.s:
            raise FieldError("too many coordinates for GF(%d)" % self.size)
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c % self.p
        return code

    @cached_property
    def generator(self) -> int:
        """Code of the power-basis generator u (equals p when s > 1)."""
        return self.p if self.s > 1 else 1

    def check(self, a: int) -> int:
        if not (isinstance(a, int) and 0 <= a < self.size):
            raise FieldError(f"{a!r} is not an element code of {self}")
        return a


def fq_arith(op: str, a: int, b: int, spec: FieldSpec) -> int:
    """Dispatch ``add/sub/mul/div/pow`` by name (``b`` is the exponent for pow)."""
    spec.check(a)
    if op == "pow":
        if b < 0:
            raise FieldError("pow requires a nonnegative exponent")
        return spec.pow(a, b)
    spec.check(b)
    try:
        fn = {"add": spec.add, "sub": spec.sub, "mul": spec.mul, "div": spec.div}[op]
    except KeyError:
        raise FieldError(f"unknown operation {op!r}") from None
    return fn(a, b)


def fq_is_square(a: int, spec: FieldSpec) -> bool:
    return spec.is_square(a)


def field_make(p: int, s: int = 1, limit: int = DEFAULT_Q_LIMIT) -> FieldSpec:
    """Build F_{p^s} with the lexicographically smallest monic irreducible modulus."""
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if s < 1:
        raise FieldError("extension degree must be positive")
    if p**s > limit:
        raise FieldTooLarge(f"q = {p}^{s} exceeds the limit {limit}")
    if s == 1:
        return FieldSpec(p)
    from .factor import smallest_irreducible

    prime = FieldSpec(p)
    return FieldSpec(p, s, smallest_irreducible(prime, s).coeffs)
