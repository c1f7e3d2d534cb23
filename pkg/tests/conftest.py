import random

import pytest
from hypothesis import HealthCheck, settings
from sympy.polys.domains import FF
from sympy.polys.fields import field

from ffschinzel.algebra import Poly, RatFunc, field_make
from ffschinzel.elliptic import PointK, curve_make

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def F5():
    return field_make(5)


@pytest.fixture(scope="session")
def F7():
    return field_make(7)


@pytest.fixture(scope="session")
def F9():
    return field_make(3, 2)


@pytest.fixture(scope="session")
def t5(F5):
    return RatFunc.t(F5)


@pytest.fixture(scope="session")
def running(F5):
    """y^2 = x^3 + t x + 1 over F_5(t) with P = (0, 1)."""
    t = RatFunc.t(F5)
    one = RatFunc.one(F5)
    E = curve_make(t, one)
    return E, PointK(RatFunc.zero(F5), one)


def place(spec, *coeffs):
    from ffschinzel.places import Place

    return Place(Poly.from_ints(spec, list(coeffs)))


def random_poly(spec, rng, max_deg, monic=False):
    d = rng.randint(0, max_deg)
    c = [rng.randrange(spec.size) for _ in range(d + 1)]
    if monic:
        c[-1] = 1
    return Poly(spec, c)


def random_nonzero_poly(spec, rng, max_deg):
    while True:
        f = random_poly(spec, rng, max_deg)
        if not f.is_zero():
            return f


def random_ratfunc(spec, rng, max_deg):
    return RatFunc(random_nonzero_poly(spec, rng, max_deg), random_nonzero_poly(spec, rng, max_deg))


def to_sympy(f: RatFunc):
    """Image of a prime-field RatFunc in sympy's F_p(t), an independent implementation."""
    K, T = field("t", FF(f.spec.p))

    def conv(g):
        return sum((K(c) * T**i for i, c in enumerate(g.coeffs)), K(0))

    return conv(f.num) / conv(f.den)


@pytest.fixture
def rng():
    return random.Random(20240611)
