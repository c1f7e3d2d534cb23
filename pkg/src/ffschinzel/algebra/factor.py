"""Factorization in F_q[t] and enumeration of monic irreducibles.

``poly_factor`` is the classical pipeline: squarefree decomposition,
distinct-degree factorization, then Cantor-Zassenhaus equal-degree
splitting (trace map in characteristic 2).  The splitting is randomized
but all outputs are sorted by ``Poly.lex_key``.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator

from sympy import divisors, factorint, mobius

from .field import FieldSpec
from .poly import Poly

Factorization = list  # list[tuple[Poly, int]]


def _pth_root(f: Poly) -> Poly:
    """g with g^p = f, for f whose derivative vanishes."""
    spec = f.spec
    p = spec.p
    c = f.coeffs
    e = spec.size // p  # a -> a^(q/p) inverts Frobenius on F_q
    return Poly(spec, [spec.pow(c[i], e) for i in range(0, len(c), p)])


def squarefree_decomposition(f: Poly) -> dict[Poly, int]:
    """Monic squarefree, pairwise coprime parts ``{g: k}`` with prod g^k = monic(f)."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    f = f.monic()
    out: dict[Poly, int] = {}
    if f.is_constant():
        return out
    p = f.spec.p
    c = f.gcd(f.derivative())
    w = f // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        fac = w // y
        if not fac.is_one():
            out[fac] = out.get(fac, 0) + i
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        for g, k in squarefree_decomposition(_pth_root(c)).items():
            out[g] = out.get(g, 0) + k * p
    return out


def radical(f: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of f."""
    r = Poly.one(f.spec)
    for g in squarefree_decomposition(f):
        r = r * g
    return r


def _frobenius_step(h: Poly, f: Poly) -> Poly:
    return h.powmod(f.spec.size, f)


def distinct_degree(f: Poly, max_degree: int | None = None) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree.

    With ``max_degree`` the search stops after that degree and the
    unsplit remainder is returned with degree 0 as a marker.
    """
    spec = f.spec
    x = Poly.t(spec)
    out = []
    rest = f
    h = x % rest if rest.deg() > 0 else x
    d = 0
    while rest.deg() >= 2 * (d + 1):
        d += 1
        if max_degree is not None and d > max_degree:
            break
        h = _frobenius_step(h, rest)
        g = rest.gcd(h - x)
        if not g.is_one():
            out.append((g, d))
            rest = rest // g
            h = h % rest if rest.deg() > 0 else h
    else:
        if rest.deg() > 0:
            if max_degree is None or rest.deg() <= max_degree:
                out.append((rest, rest.deg()))
                rest = Poly.one(spec)
    if rest.deg() > 0:
        out.append((rest, 0))
    return out


def _random_poly(spec: FieldSpec, below: int, rng: random.Random) -> Poly:
    return Poly(spec, [rng.randrange(spec.size) for _ in range(below)])


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Irreducible factors of a monic squarefree f whose factors all have degree d."""
    n = f.deg()
    if n == d:
        return [f]
    spec = f.spec
    q = spec.size
    while True:
        a = _random_poly(spec, n, rng)
        if a.is_constant():
            continue
        if spec.p == 2:
            # absolute trace from F_{q^d} down to F_2
            b = a % f
            acc = b
            for _ in range(spec.s * d - 1):
                b = (b * b) % f
                acc = acc + b
            b = acc
        else:
            b = a.powmod((q**d - 1) // 2, f) - Poly.one(spec)
        g = f.gcd(b)
        if 0 < g.deg() < n:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def poly_factor(f: Poly, rng: random.Random | None = None) -> Factorization:
    """Factor f into ``[(monic irreducible, multiplicity), ...]`` sorted by lex_key.

    ``lc(f) * prod(g**k)`` reproduces f exactly.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if rng is None:
        rng = random.Random(0)
    out: dict[Poly, int] = {}
    for part, k in squarefree_decomposition(f).items():
        for prod, d in distinct_degree(part):
            for g in equal_degree(prod, d, rng):
                out[g] = out.get(g, 0) + k
    return sorted(out.items(), key=lambda gk: gk[0].lex_key())


def smallest_factors(f: Poly, rng: random.Random | None = None) -> list[Poly]:
    """All monic irreducible factors of f of the least degree, sorted.

    Only runs distinct-degree factorization as far as needed, which makes
    it cheap on large polynomials with a small factor.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.deg() < 1:
        return []
    if rng is None:
        rng = random.Random(0)
    sq = radical(f)
    spec = f.spec
    x = Poly.t(spec)
    h = x % sq if sq.deg() > 0 else x
    d = 0
    while 2 * (d + 1) <= sq.deg():
        d += 1
        h = _frobenius_step(h, sq)
        g = sq.gcd(h - x)
        if not g.is_one():
            return sorted(equal_degree(g, d, rng), key=Poly.lex_key)
    return [sq]


def is_irreducible(f: Poly) -> bool:
    """Rabin's test."""
    n = f.deg()
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    q = f.spec.size
    x = Poly.t(f.spec)
    if not (x.powmod(q**n, f) - x).is_zero():
        return False
    for r in factorint(n):
        h = x.powmod(q ** (n // r), f)
        if not f.gcd(h - x).is_one():
            return False
    return True


def count_irreducibles(q: int, d: int) -> int:
    """Necklace count (1/d) sum_{e|d} mu(d/e) q^e."""
    return sum(int(mobius(d // e)) * q**e for e in divisors(d)) // d


def _monic_from_code(spec: FieldSpec, d: int, code: int) -> Poly:
    q = spec.size
    c = []
    for _ in range(d):
        code, r = divmod(code, q)
        c.append(r)
    c.append(1)
    return Poly._raw(spec, tuple(c))


# q^d above which irreducibles are found by testing instead of sieving
_SIEVE_LIMIT = 300_000


@lru_cache(maxsize=64)
def _irreducible_codes(spec: FieldSpec, d: int) -> tuple:
    q = spec.size
    total = q**d
    if d == 1:
        return tuple(range(q))
    if total > _SIEVE_LIMIT:
        return ()
    # every reducible monic has a monic irreducible factor of degree <= d/2
    reducible = bytearray(total)
    for k in range(1, d // 2 + 1):
        rest = d - k
        for g_code in _irreducible_codes(spec, k):
            g = _monic_from_code(spec, k, g_code)
            for h_code in range(q**rest):
                fc = (g * _monic_from_code(spec, rest, h_code)).coeffs
                code = 0
                for c in reversed(fc[:-1]):
                    code = code * q + c
                reducible[code] = 1
    return tuple(i for i in range(total) if not reducible[i])


def irreducibles_stream(spec: FieldSpec, d: int) -> Iterator[Poly]:
    """Every monic irreducible of degree d once, lowest lex_key first."""
    if d < 1:
        raise ValueError("degree must be positive")
    q = spec.size
    if d == 1 or q**d <= _SIEVE_LIMIT:
        for code in _irreducible_codes(spec, d):
            yield _monic_from_code(spec, d, code)
        return
    for code in range(q**d):
        f = _monic_from_code(spec, d, code)
        if is_irreducible(f):
            yield f


def smallest_irreducible(spec: FieldSpec, d: int) -> Poly:
    return next(irreducibles_stream(spec, d))
