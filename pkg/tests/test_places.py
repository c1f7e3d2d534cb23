import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import place, random_nonzero_poly, random_ratfunc
from ffschinzel.algebra import FieldSpec, Poly, RatFunc, field_make
from ffschinzel.errors import NegativeValuation
from ffschinzel.places import (
    INFINITY,
    Place,
    finite_places,
    product_formula_defect,
    projective_height,
    residue,
    residue_field,
    residue_to_poly,
    support,
    valuation,
)


def test_valuation_examples(F5, t5):
    f = t5**3 / (t5 + 1)
    assert valuation(f, place(F5, 0, 1)) == 3
    assert valuation(f, INFINITY) == -2
    assert valuation(f, place(F5, 1, 1)) == -1
    assert valuation(RatFunc.zero(F5), INFINITY) == math.inf


def test_residue_examples(F5, t5):
    assert residue(t5, place(F5, 1, 1)) == 4
    assert residue((t5**2 + 1) / (t5 - 1), place(F5, 3, 1)) == 0
    with pytest.raises(NegativeValuation):
        residue(1 / t5, place(F5, 0, 1))


def test_residue_at_infinity(F5, t5):
    assert residue((t5 * 3 + 1) / (t5 + 2), INFINITY) == 3
    assert residue(1 / t5, INFINITY) == 0


def test_residue_at_quadratic_place(F5, t5):
    v = place(F5, 2, 0, 1)  # t^2 + 2
    F = residue_field(v, F5)
    assert F.size == 25
    r = residue(t5, v)
    assert F.mul(r, r) == F.neg(F.from_int(2))
    assert residue_to_poly(r, v, F5) == Poly.t(F5)


def test_residue_is_a_ring_homomorphism(F5, rng):
    for v in list(finite_places(F5, 2))[:12]:
        F = residue_field(v, F5)
        n = 0
        while n < 20:
            f, g = random_ratfunc(F5, rng, 6), random_ratfunc(F5, rng, 6)
            if valuation(f, v) < 0 or valuation(g, v) < 0:
                continue
            n += 1
            assert residue(f + g, v) == F.add(residue(f, v), residue(g, v))
            assert residue(f * g, v) == F.mul(residue(f, v), residue(g, v))


def test_place_ordering(F5):
    ps = [place(F5, 2, 0, 1), place(F5, 1, 1), INFINITY, place(F5, 0, 1)]
    assert [str(v) for v in sorted(ps)] == ["inf", "(t)", "(t+1)", "(t^2+2)"]
    assert INFINITY.degree == 1 and place(F5, 2, 0, 1).degree == 2


def test_product_formula_examples(F5, t5):
    assert product_formula_defect(t5**3 / (t5 + 1)) == 0
    assert product_formula_defect(RatFunc.from_int(F5, 7)) == 0
    f = (t5**2 + 2) / (t5 + 1) ** 2
    assert product_formula_defect(f) == 0
    assert support(f) == [(place(F5, 1, 1), -2), (place(F5, 2, 0, 1), 1)]
    with pytest.raises(ValueError):
        product_formula_defect(RatFunc.zero(F5))


def test_support_matches_direct_valuations(F5, rng):
    for _ in range(20):
        f = random_ratfunc(F5, rng, 8)
        for v, k in support(f):
            assert valuation(f, v) == k
        listed = {v for v, _ in support(f)}
        for v in finite_places(F5, 1):
            if v not in listed:
                assert valuation(f, v) == 0


def test_projective_height_examples(F5, t5):
    one = RatFunc.one(F5)
    assert projective_height([t5, one]) == 1
    assert projective_height([one, one]) == 0
    assert projective_height([t5**2 + 1, t5]) == 2
    with pytest.raises(ValueError):
        projective_height([RatFunc.zero(F5), RatFunc.zero(F5)])


def _height_by_places(coords):
    # direct sum over the support of every coordinate
    spec = coords[0].spec
    places = {INFINITY}
    for c in coords:
        if not c.is_zero():
            places.update(v for v, _ in support(c))
    return -sum(v.degree * min(valuation(c, v) for c in coords) for v in places)


@pytest.mark.parametrize("args", [(5, 1), (7, 1), (3, 2)])
def test_projective_height_scaling_invariance(args):
    F = field_make(*args)
    rng = random.Random(7)
    for _ in range(40):
        x0, x1, lam = (random_ratfunc(F, rng, 6) for _ in range(3))
        h = projective_height([x0, x1])
        assert h == _height_by_places([x0, x1])
        assert projective_height([lam * x0, lam * x1]) == h


def test_height_of_polynomial_is_degree(F7, rng):
    for _ in range(50):
        f = random_nonzero_poly(F7, rng, 15)
        assert projective_height([RatFunc.from_poly(f), RatFunc.one(F7)]) == f.deg()


@given(st.integers(0, 10**9))
def test_valuation_axioms(seed):
    rng = random.Random(seed)
    F = FieldSpec(5)
    f, g = random_ratfunc(F, rng, 6), random_ratfunc(F, rng, 6)
    for v in [INFINITY, *finite_places(F, 1)]:
        vf, vg = valuation(f, v), valuation(g, v)
        assert valuation(f * g, v) == vf + vg
        s = f + g
        if s.is_zero():
            continue
        assert valuation(s, v) >= min(vf, vg)
        if vf != vg:
            assert valuation(s, v) == min(vf, vg)


def test_place_requires_monic(F5):
    with pytest.raises(ValueError):
        Place(Poly.from_ints(F5, [1, 2]))
