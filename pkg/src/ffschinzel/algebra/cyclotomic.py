"""Cyclotomic polynomials reduced into F_q[t], plus small number-theory helpers."""

from __future__ import annotations

from functools import lru_cache

from sympy import divisors, factorint

from ..errors import PDividesN
from .field import FieldSpec
from .poly import Poly


def mobius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(n: int) -> int:
    out = n
    for r in factorint(n):
        out = out // r * (r - 1)
    return out


def prime_factors(n: int) -> list[int]:
    return sorted(factorint(n))


@lru_cache(maxsize=None)
def _cyclotomic_int(n: int) -> tuple[int, ...]:
    # integer coefficients, constant term first
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num = _int_exact_div(num, _cyclotomic_int(d))
    return tuple(num)


def _int_exact_div(a: list[int], b: tuple[int, ...]) -> list[int]:
    # b is monic
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        q[k - db] = c
        if c:
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    assert not any(a), "inexact cyclotomic division"
    return q


def cyclotomic_poly(n: int, spec: FieldSpec) -> Poly:
    """Phi_n with integer coefficients mapped into F_q; requires gcd(n, p) = 1."""
    if n < 1:
        raise ValueError("n must be positive")
    if n % spec.p == 0:
        raise PDividesN(f"p = {spec.p} divides n = {n}")
    return Poly.from_ints(spec, _cyclotomic_int(n))
