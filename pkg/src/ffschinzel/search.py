"""Searches for places where a point reduces to a prescribed exact order.

Every engine returns a :class:`SearchReport`.  A found place is always
re-certified by an order computation at that place that does not reuse
the shortcut which proposed it.  Candidate places are tried in the global
place order, so the first certified one is the tie-broken answer.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional

from sympy import factorint

from .algebra import Poly, RatFunc, poly_factor, smallest_factors
from .elliptic import (
    CurveK,
    Multiples,
    PointK,
    _fast_reduce,
    bad_set_S,
    is_ordinary_generic,
    is_torsion,
    local_height,
    reduced_curve,
    reduced_point_order,
    weil_height,
)
from .errors import BudgetExceeded, NotOnCurve, PDividesN, SupersingularCurve, TorsionPoint
from .gmtorus import (
    TorusPoint,
    TorusSpec,
    cyclotomic_value,
    mult_order_mod,
    reduce_torus_point,
    reduced_torus,
    torus_admissible,
    torus_is_torsion,
    torus_order_mod,
)
from .places import INFINITY, Place, places_of_degree, valuation


class Strategy(str, Enum):
    DENOMINATOR = "Denominator"
    SCAN = "Scan"
    AUTO = "Auto"


@dataclass(frozen=True)
class SearchBounds:
    """Limits that make the existential searches terminate.

    ``max_place_degree`` caps the Scan strategy; the Denominator strategy
    is exact and ignores it.  ``workers > 1`` scans place degrees in
    parallel and merges by place order, so the answer does not change.
    """

    max_place_degree: int = 6
    max_coord_degree: int = 20000
    strategy: Strategy = Strategy.AUTO
    workers: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.max_place_degree < 1 or self.max_coord_degree < 1 or self.workers < 1:
            raise ValueError("search bounds must be positive")
        object.__setattr__(self, "strategy", Strategy(self.strategy))


@dataclass
class SearchReport:
    target_n: int
    found: bool
    place: Optional[Place] = None
    order: Optional[int] = None
    strategy: str = ""
    places_examined: int = 0
    skipped_places: int = 0
    elapsed_ms: float = 0.0
    note: str = ""

    @property
    def outcome(self) -> str:
        return "Found" if self.found else "NotFoundWithinBounds"

    def to_dict(self) -> dict:
        return {
            "target_n": self.target_n,
            "outcome": self.outcome,
            "place": None if self.place is None else str(self.place),
            "order": self.order,
            "strategy": self.strategy,
            "places_examined": self.places_examined,
            "skipped_places": self.skipped_places,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_n(n: int, p: int) -> None:
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n % p == 0:
        raise PDividesN(f"p = {p} divides n = {n}")


class _Timer:
    def __init__(self):
        self.t0 = time.perf_counter()

    def ms(self) -> float:
        return (time.perf_counter() - self.t0) * 1000.0


def _scan(
    places_by_degree: Callable[[int], Iterable[Place]],
    test: Callable[[Place], Optional[bool]],
    max_degree: int,
    workers: int,
    extra_first: Iterable[Place] = (),
) -> tuple[Optional[Place], int, int]:
    """First place (global order) with test(v) True.

    ``test`` returns None for a skipped (inadmissible) place.  Returns
    (place, examined, skipped).
    """

    def run(places) -> tuple[Optional[Place], int, int]:
        examined = skipped = 0
        for v in places:
            r = test(v)
            if r is None:
                skipped += 1
                continue
            examined += 1
            if r:
                return v, examined, skipped
        return None, examined, skipped

    chunks = [list(extra_first)] + [None] * max_degree
    if workers <= 1:
        ex = sk = 0
        for i in range(max_degree + 1):
            places = chunks[0] if i == 0 else places_by_degree(i)
            v, e, s = run(places)
            ex, sk = ex + e, sk + s
            if v is not None:
                return v, ex, sk
        return None, ex, sk
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(run, chunks[0] if i == 0 else list(places_by_degree(i)))
            for i in range(max_degree + 1)
        ]
        results = [f.result() for f in futures]
    ex = sk = 0
    for v, e, s in results:
        ex, sk = ex + e, sk + s
        if v is not None:
            return v, ex, sk
    return None, ex, sk


# -- the multiplicative group -------------------------------------------------------
def find_place_mult(x: RatFunc, n: int, bounds: SearchBounds = SearchBounds()) -> SearchReport:
    """Place where x mod v has multiplicative order exactly n."""
    clock = _Timer()
    spec = x.spec
    if x.is_constant():
        raise ValueError("x must be nonconstant")
    _check_n(n, spec.p)
    strategy = bounds.strategy
    if strategy is Strategy.AUTO:
        strategy = Strategy.DENOMINATOR

    def certify(v: Place) -> Optional[bool]:
        if valuation(x, v) != 0:
            return None
        return mult_order_mod(x, v) == n

    if strategy is Strategy.DENOMINATOR:
        # zeros of Phi_n(x) at places where x is a unit have order n exactly
        phi = cyclotomic_value(x, n)
        cands = []
        if valuation(x, INFINITY) == 0 and valuation(phi, INFINITY) > 0:
            cands.append(INFINITY)
        cands += _finite_zero_places(phi.num)
        examined = skipped = 0
        for v in cands:
            r = certify(v)
            if r is None:
                skipped += 1
                continue
            examined += 1
            if r:
                return SearchReport(n, True, v, n, strategy.value, examined, skipped, clock.ms())
        return SearchReport(n, False, None, None, strategy.value, examined, skipped, clock.ms())

    v, ex, sk = _scan(
        lambda d: places_of_degree(spec, d),
        certify,
        bounds.max_place_degree,
        bounds.workers,
        extra_first=[INFINITY],
    )
    if v is not None:
        return SearchReport(n, True, v, n, strategy.value, ex, sk, clock.ms())
    return SearchReport(n, False, None, None, strategy.value, ex, sk, clock.ms())


def _finite_zero_places(f: Poly) -> list[Place]:
    if f.deg() < 1:
        return []
    return [Place(g) for g, _ in poly_factor(f)]


# -- elliptic curves ------------------------------------------------------------------
def _strip(D: Poly, g: Poly) -> Poly:
    """Remove from D every irreducible factor it shares with g."""
    while D.deg() > 0:
        h = D.gcd(g)
        if h.deg() < 1:
            break
        D = D // h
        g = h
    return D


def _require_nontorsion(E: CurveK, P: PointK) -> None:
    torsion, order = is_torsion(E, P)
    if torsion:
        raise TorsionPoint(f"{P} is a torsion point of order {order}")


def _ec_scan_test(E: CurveK, P: PointK, target: int):
    def test(v: Place) -> Optional[bool]:
        if not E.is_admissible(v):
            return None
        Q = E.spec.size ** v.degree
        if target > Q + 1 + 2 * math.isqrt(Q) + 1:
            return False
        rc = reduced_curve(E, v)
        return rc.has_order(_fast_reduce(rc, P, v), target)

    return test


def _ec_scan(E: CurveK, P: PointK, target: int, bounds: SearchBounds):
    return _scan(
        lambda d: places_of_degree(E.spec, d),
        _ec_scan_test(E, P, target),
        bounds.max_place_degree,
        bounds.workers,
    )


def _certified(E: CurveK, P: PointK, v: Place, target: int) -> bool:
    return reduced_point_order(E, P, v) == target


def find_place_ec(
    E: CurveK, P: PointK, n: int, bounds: SearchBounds = SearchBounds(), *, check_torsion: bool = True
) -> SearchReport:
    """Admissible finite place where P mod v has order exactly n."""
    clock = _Timer()
    _check_n(n, E.spec.p)
    if not E.contains(P):
        raise NotOnCurve(f"{P} is not on {E}")
    if check_torsion:
        _require_nontorsion(E, P)
    strategy = bounds.strategy
    if strategy is Strategy.AUTO:
        strategy = Strategy.DENOMINATOR

    if strategy is Strategy.DENOMINATOR:
        mult = Multiples(E, P, bounds.max_coord_degree)
        try:
            nP = mult[n]
            D = nP.x.den
            for r in factorint(n):
                D = _strip(D, mult[n // r].x.den if not mult[n // r].is_identity else Poly.one(E.spec))
        except BudgetExceeded as exc:
            return SearchReport(
                n, False, None, None, strategy.value, 0, 0, clock.ms(), note=f"budget: {exc}"
            )
        bad = E.bad_poly
        D_good = _strip(D, bad)
        skipped = len(_finite_zero_places(D // D_good))
        examined = 0
        while D_good.deg() > 0:
            for g in smallest_factors(D_good):
                v = Place(g)
                examined += 1
                if _certified(E, P, v, n):
                    return SearchReport(n, True, v, n, strategy.value, examined, skipped, clock.ms())
                D_good = _strip(D_good, g)
        return SearchReport(n, False, None, None, strategy.value, examined, skipped, clock.ms())

    v, ex, sk = _ec_scan(E, P, n, bounds)
    if v is not None and _certified(E, P, v, n):
        return SearchReport(n, True, v, n, strategy.value, ex, sk, clock.ms())
    return SearchReport(n, False, None, None, strategy.value, ex, sk, clock.ms())


def find_place_ec_ptower(
    E: CurveK, P: PointK, n: int, tpow: int, bounds: SearchBounds = SearchBounds()
) -> SearchReport:
    """Place where P mod v has order exactly n * p^tpow (Scan only when tpow > 0)."""
    p = E.spec.p
    if tpow < 0:
        raise ValueError("tpow must be nonnegative")
    if tpow == 0:
        return find_place_ec(E, P, n, bounds)
    clock = _Timer()
    _check_n(n, p)
    if not is_ordinary_generic(E):
        raise SupersingularCurve(f"{E} is supersingular; reduced orders are prime to p")
    _require_nontorsion(E, P)
    target = n * p**tpow
    v, ex, sk = _ec_scan(E, P, target, bounds)
    if v is not None and _certified(E, P, v, target):
        return SearchReport(target, True, v, target, Strategy.SCAN.value, ex, sk, clock.ms())
    return SearchReport(target, False, None, None, Strategy.SCAN.value, ex, sk, clock.ms())


# -- tori -----------------------------------------------------------------------------
def find_place_torus(
    T: TorusSpec, P: TorusPoint, n: int, bounds: SearchBounds = SearchBounds()
) -> SearchReport:
    """Admissible place (Infinity included) where P mod v has order exactly n."""
    clock = _Timer()
    spec = T.spec
    _check_n(n, spec.p)
    torsion, order = torus_is_torsion(T, P)
    if torsion:
        raise TorsionPoint(f"{P} is a torsion point of order {order}")

    def test(v: Place) -> Optional[bool]:
        if not torus_admissible(T, P, v):
            return None
        rt = reduced_torus(T, v)
        if rt.order % n:
            return False
        return rt.point_order(reduce_torus_point(T, P, v)) == n

    v, ex, sk = _scan(
        lambda d: places_of_degree(spec, d),
        test,
        bounds.max_place_degree,
        bounds.workers,
        extra_first=[INFINITY],
    )
    if v is not None and torus_order_mod(T, P, v) == n:
        return SearchReport(n, True, v, n, Strategy.SCAN.value, ex, sk, clock.ms())
    return SearchReport(n, False, None, None, Strategy.SCAN.value, ex, sk, clock.ms())


# -- batch verification ----------------------------------------------------------------
@dataclass
class RangeReport:
    n_from: int
    n_to: int
    reports: list[SearchReport] = field(default_factory=list)

    @property
    def admissible_n(self) -> list[int]:
        return [r.target_n for r in self.reports]

    @property
    def exceptions(self) -> list[int]:
        return [r.target_n for r in self.reports if not r.found]

    @property
    def found_count(self) -> int:
        return sum(r.found for r in self.reports)

    @property
    def exceptions_form_prefix(self) -> bool:
        """True iff every failure precedes every success in the window."""
        seen_found = False
        for r in self.reports:
            if r.found:
                seen_found = True
            elif seen_found:
                return False
        return True

    def summary(self) -> dict:
        return {
            "n_from": self.n_from,
            "n_to": self.n_to,
            "admissible": len(self.reports),
            "found": self.found_count,
            "exceptions": self.exceptions,
            "exceptions_form_prefix": self.exceptions_form_prefix,
            "elapsed_ms": round(sum(r.elapsed_ms for r in self.reports), 3),
        }


def verify_range(
    engine: Callable[..., SearchReport],
    subject: tuple,
    n_from: int,
    n_to: int,
    bounds: SearchBounds = SearchBounds(),
    **engine_kwargs,
) -> RangeReport:
    """Run ``engine(*subject, n, bounds)`` for each n in [n_from, n_to] prime to p.

    For find_place_ec_ptower pass ``tpow`` as a keyword; n is then the
    prime-to-p part of the target order.
    """
    out = RangeReport(n_from, n_to)
    if n_from > n_to:
        return out
    p = subject[0].spec.p
    for n in range(max(n_from, 1), n_to + 1):
        if n % p == 0:
            continue
        if engine is find_place_ec_ptower:
            out.reports.append(engine(*subject, n, engine_kwargs.get("tpow", 0), bounds))
        else:
            out.reports.append(engine(*subject, n, bounds, **engine_kwargs))
    return out


# -- the Siegel ratio experiment -----------------------------------------------------------
@dataclass(frozen=True)
class SiegelRow:
    n: int
    place: Place
    h_v: int
    h: int

    @property
    def ratio(self) -> Optional[Fraction]:
        return None if self.h == 0 else Fraction(self.h_v, self.h)


@dataclass
class SiegelTable:
    rows: list[SiegelRow]
    truncated: bool = False
    last_n: int = 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "place", "h_v", "h", "ratio"])
        for r in self.rows:
            ratio = "undefined" if r.ratio is None else str(r.ratio)
            w.writerow([r.n, str(r.place), r.h_v, r.h, ratio])
        return buf.getvalue()


def siegel_table(
    E: CurveK,
    P: PointK,
    places: Optional[Iterable[Place]] = None,
    n_max: int = 60,
    budget: int = 20000,
    n_min: int = 1,
) -> SiegelTable:
    """Rows (n, v, h_v(nP), h(nP)) for n prime to p and v in ``places`` (default: bad_set_S)."""
    places = bad_set_S(E) if places is None else sorted(places, key=Place.sort_key)
    mult = Multiples(E, P, budget)
    rows: list[SiegelRow] = []
    last = 0
    for n in range(1, n_max + 1):
        try:
            Q = mult[n]
        except BudgetExceeded:
            return SiegelTable(rows, truncated=True, last_n=last)
        last = n
        if n < n_min or n % E.spec.p == 0:
            continue
        h = weil_height(E, Q)
        for v in places:
            rows.append(SiegelRow(n, v, local_height(E, Q, v), h))
    return SiegelTable(rows, truncated=False, last_n=last)


ENGINES = {
    "mult": find_place_mult,
    "ec": find_place_ec,
    "ec-ptower": find_place_ec_ptower,
    "torus": find_place_torus,
}
