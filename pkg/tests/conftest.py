import random
from fractions import Fraction

import pytest
from hypothesis import settings

from cyclohouse import CycNum, Poly, RatFunc

settings.register_profile("ci", deadline=None, max_examples=50, derandomize=True)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return random.Random(20260808)


def _conductor_choices(max_conductor):
    return [m for m in (1, 3, 4, 5, 7, 8, 9, 12) if m <= max_conductor]


def random_cycnum(rng, max_conductor=12, height=10, allow_zero=True):
    """Random exact cyclotomic number of bounded conductor and height."""
    n = rng.choice(_conductor_choices(max_conductor))
    from cyclohouse.cyclotomic import euler_phi

    phi = euler_phi(n)
    coords = [
        Fraction(rng.randint(-height, height), rng.randint(1, 4))
        for _ in range(phi)
    ]
    v = CycNum(n, coords)
    if not allow_zero and not v:
        return CycNum.from_rational(1)
    return v


def _random_cycnum_in(rng, n, height, allow_zero=True):
    """Random element of Q(zeta_n) specifically (keeps field arithmetic
    from escalating to huge compositum conductors in polynomial tests)."""
    from cyclohouse.cyclotomic import euler_phi

    phi = euler_phi(n)
    coords = [
        Fraction(rng.randint(-height, height), rng.randint(1, 4)) for _ in range(phi)
    ]
    v = CycNum(n, coords)
    if not allow_zero and not v:
        return CycNum.from_rational(1)
    return v


def random_poly(rng, deg, max_conductor=12, height=6):
    n = rng.choice(_conductor_choices(max_conductor))
    coeffs = [_random_cycnum_in(rng, n, height) for _ in range(deg)]
    coeffs.append(_random_cycnum_in(rng, n, height, allow_zero=False))
    return Poly(coeffs)


def random_ratfunc(rng, num_deg, den_deg, max_conductor=12, height=6):
    n = rng.choice(_conductor_choices(max_conductor))
    num_coeffs = [_random_cycnum_in(rng, n, height) for _ in range(num_deg)]
    num_coeffs.append(_random_cycnum_in(rng, n, height, allow_zero=False))
    den_coeffs = [_random_cycnum_in(rng, n, height) for _ in range(den_deg)]
    den_coeffs.append(_random_cycnum_in(rng, n, height, allow_zero=False))
    return RatFunc(Poly(num_coeffs), Poly(den_coeffs))
