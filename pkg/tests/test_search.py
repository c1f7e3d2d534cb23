import json
from fractions import Fraction

import pytest

from conftest import place
from ffschinzel.algebra import RatFunc
from ffschinzel.elliptic import (
    PointK,
    bad_set_S,
    curve_make,
    local_height,
    point_mul,
    reduce_point,
    reduced_curve,
    reduced_point_order,
)
from ffschinzel.errors import BadPlace, PDividesN, SupersingularCurve, TorsionPoint
from ffschinzel.gmtorus import TorusPoint, TorusSpec, mult_order_mod, torus_order_mod
from ffschinzel.places import INFINITY, finite_places
from ffschinzel.search import (
    SearchBounds,
    Strategy,
    find_place_ec,
    find_place_ec_ptower,
    find_place_mult,
    find_place_torus,
    siegel_table,
    verify_range,
)

@pytest.fixture(scope="module")
def torus(F5):
    t = RatFunc.t(F5)
    return TorusSpec(t), TorusPoint((t + 1) / (t - 1), 2 / (t - 1))


# -- multiplicative group --------------------------------------------------------------
def test_find_place_mult_examples(F5, t5):
    r = find_place_mult(t5, 2)
    assert (r.found, r.place, r.order) == (True, place(F5, 1, 1), 2)
    r = find_place_mult(t5, 4)
    assert (r.found, r.place, r.order) == (True, place(F5, 2, 1), 4)
    with pytest.raises(PDividesN):
        find_place_mult(t5, 5)
    with pytest.raises(ValueError):
        find_place_mult(RatFunc.from_int(F5, 3), 2)


def test_mult_strategies_agree(F5, t5):
    for x in (t5, (t5 + 1) / t5, t5**2 + 2):
        for n in range(1, 25):
            if n % 5 == 0:
                continue
            den = find_place_mult(x, n)
            scan = find_place_mult(x, n, SearchBounds(max_place_degree=4, strategy="Scan"))
            if scan.found:
                assert den.found and den.place == scan.place
            if den.found and den.place.degree <= 4:
                assert scan.found and scan.place == den.place
            if den.found:
                assert mult_order_mod(x, den.place) == n


def test_mult_uses_infinity_when_x_is_a_unit_there(F5, t5):
    x = (t5 * 2 + 1) / (t5 + 1)  # residue 2 at infinity, of order 4
    r = find_place_mult(x, 4)
    assert r.place == INFINITY and mult_order_mod(x, INFINITY) == 4


# -- elliptic --------------------------------------------------------------------------
def test_find_place_ec_examples(F5, running):
    E, P = running
    r = find_place_ec(E, P, 3)
    assert (r.found, r.place, r.order) == (True, place(F5, 0, 1), 3)
    assert not find_place_ec(E, P, 2).found
    r = find_place_ec(E, P, 9)
    assert (r.found, r.place, r.order) == (True, place(F5, 4, 1), 9)


def test_find_place_ec_errors(F5, running):
    E, P = running
    with pytest.raises(PDividesN):
        find_place_ec(E, P, 10)
    E0 = curve_make(RatFunc.zero(F5), RatFunc.one(F5))
    with pytest.raises(TorsionPoint):
        find_place_ec(E0, PointK(RatFunc.zero(F5), RatFunc.one(F5)), 3)


def test_ec_strategies_agree_and_certify(running):
    E, P = running
    bounds = SearchBounds(max_place_degree=4, strategy=Strategy.SCAN)
    for n in [3, 6, 7, 8, 9, 12, 13, 16, 17]:
        den = find_place_ec(E, P, n)
        scan = find_place_ec(E, P, n, bounds)
        if den.found and den.place.degree <= 4:
            assert scan.found and scan.place == den.place
        if scan.found:
            assert den.found and den.place == scan.place
        for r in (den, scan):
            if r.found:
                assert reduced_point_order(E, P, r.place) == n


def test_monotone_bounds(running):
    E, P = running
    for n in [3, 7, 8, 12]:
        small = find_place_ec(E, P, n, SearchBounds(max_place_degree=2, strategy="Scan"))
        big = find_place_ec(E, P, n, SearchBounds(max_place_degree=3, strategy="Scan"))
        if small.found:
            assert big.found and big.place == small.place


def test_partitioned_scan_is_deterministic(running):
    E, P = running
    for n in [7, 12, 16]:
        serial = find_place_ec(E, P, n, SearchBounds(max_place_degree=3, strategy="Scan"))
        again = find_place_ec(E, P, n, SearchBounds(max_place_degree=3, strategy="Scan"))
        par = find_place_ec(
            E, P, n, SearchBounds(max_place_degree=3, strategy="Scan", workers=3)
        )
        assert serial.place == again.place == par.place
        assert serial.found == par.found


def _brute_orders(E, P, max_degree):
    # walk multiples of the reduced point, no group order or factoring involved
    out = {}
    for v in finite_places(E.spec, max_degree):
        if not E.is_admissible(v):
            continue
        rc = reduced_curve(E, v)
        Pb = reduce_point(E, P, v)
        R, k = Pb, 1
        while R is not None:
            R, k = rc.add(R, Pb), k + 1
        out[v] = k
    return out


def test_ptower_examples(F5, running):
    E, P = running
    a = find_place_ec_ptower(E, P, 3, 0)
    b = find_place_ec(E, P, 3)
    assert (a.found, a.place, a.order) == (b.found, b.place, b.order)
    E0 = curve_make(RatFunc.zero(F5), RatFunc.one(F5))
    with pytest.raises(SupersingularCurve):
        find_place_ec_ptower(E0, PointK(RatFunc.from_int(F5, 2), RatFunc.from_int(F5, 2)), 1, 1)
    r = find_place_ec_ptower(E, P, 1, 1, SearchBounds(max_place_degree=4))
    orders = _brute_orders(E, P, 4)
    witnesses = sorted(v for v, k in orders.items() if k == 5)
    if witnesses:
        assert r.found and r.place == witnesses[0]
    else:
        assert not r.found
    # frozen from the exhaustive walk above
    assert not r.found


def test_ptower_scan_matches_brute_force(running):
    E, P = running
    orders = _brute_orders(E, P, 3)
    for target_n in (1, 2, 3, 4, 6):
        r = find_place_ec_ptower(E, P, target_n, 1, SearchBounds(max_place_degree=3))
        hits = sorted(v for v, k in orders.items() if k == 5 * target_n)
        assert r.found == bool(hits)
        if hits:
            assert r.place == hits[0]


# -- tori ------------------------------------------------------------------------------------
def test_find_place_torus_examples(F5, torus):
    T, P = torus
    r = find_place_torus(T, P, 6)
    assert (r.found, r.place, r.order) == (True, place(F5, 3, 1), 6)
    with pytest.raises(PDividesN):
        find_place_torus(T, P, 5)
    with pytest.raises(TorsionPoint):
        find_place_torus(T, T.identity(), 2)


def test_torus_n1_matches_scan_oracle(F5, torus):
    T, P = torus
    r = find_place_torus(T, P, 1, SearchBounds(max_place_degree=3))
    hits = []
    for v in finite_places(F5, 3):
        try:
            if torus_order_mod(T, P, v) == 1:
                hits.append(v)
        except BadPlace:
            continue
    assert r.found == bool(hits)
    assert not r.found  # w = 2/(t-1) has no zero at an admissible place


# -- reports, ranges, Siegel table -----------------------------------------------------------
def test_report_json_fields(t5):
    doc = json.loads(find_place_mult(t5, 4).to_json())
    for key in ["target_n", "outcome", "place", "order", "strategy", "places_examined", "elapsed_ms"]:
        assert key in doc
    assert doc["place"] == "(t+2)" and doc["outcome"] == "Found"


def test_verify_range_examples(F5, t5, running):
    rr = verify_range(find_place_mult, (t5,), 2, 60)
    assert len(rr.reports) == 47 and rr.found_count == 47
    E, P = running
    rr = verify_range(find_place_ec, (E, P), 2, 20)
    assert 2 in rr.exceptions and set(rr.exceptions) <= {2, 4}
    assert verify_range(find_place_mult, (t5,), 10, 3).reports == []


def test_siegel_rows(F5, running):
    E, P = running
    table = siegel_table(E, P, [INFINITY], n_max=3)
    rows = {(r.n, str(r.place)): r for r in table.rows}
    r2 = rows[(2, "inf")]
    assert (r2.h_v, r2.h, r2.ratio) == (3, 3, 1)
    r3 = rows[(3, "inf")]
    assert (r3.h_v, r3.h, r3.ratio) == (0, 6, 0)
    assert rows[(1, "inf")].ratio is None
    csv_text = table.to_csv()
    assert csv_text.splitlines()[0] == "n,place,h_v,h,ratio"
    assert "1,inf,0,0,undefined" in csv_text


def test_siegel_table_default_places_and_truncation(running):
    E, P = running
    t = siegel_table(E, P, n_max=12)
    assert {r.place for r in t.rows} == set(bad_set_S(E))
    assert all(r.n % 5 for r in t.rows)
    small = siegel_table(E, P, n_max=40, budget=60)
    assert small.truncated and small.last_n < 40


def test_siegel_local_heights_at_good_places(F5, running):
    E, P = running
    places = [v for v in finite_places(F5, 2) if E.is_admissible(v)][:6]
    table = siegel_table(E, P, places, n_max=30)
    for v in places:
        n0 = reduced_point_order(E, P, v)
        ref = local_height(E, point_mul(E, n0, P), v)
        for r in table.rows:
            if r.place == v:
                assert r.h_v in (0, ref)
                assert (r.h_v > 0) == (r.n % n0 == 0)
                assert r.ratio is None or r.ratio == Fraction(r.h_v, r.h)
