from fractions import Fraction

import pytest

from cyclohouse import CycNum, UndecidedError, conjugates, house, is_root_of_unity
from cyclohouse.cyclotomic import is_algebraic_integer

from .conftest import random_cycnum


def z(n, k=1):
    return CycNum.zeta(n, k)


# (1+sqrt(5))/2 bracketed by two 30-digit rationals
GOLDEN_LO = Fraction("1.61803398874989484820458683436")
GOLDEN_HI = Fraction("1.61803398874989484820458683437")


def test_root_of_unity_house_is_one():
    hr = house(z(7, 3))
    assert hr.lower <= 1 <= hr.upper
    assert hr.width <= Fraction(1, 2**64)


def test_rational_house_exact():
    hr = house(CycNum.from_rational(-3))
    assert hr.lower == 3 == hr.upper


def test_golden_ratio_anchor():
    # [GOLDEN_LO, GOLDEN_HI] brackets (1+sqrt(5))/2 to 30 digits; the
    # rigorous enclosure must intersect it and be at least 1e-10 tight.
    hr = house(CycNum.from_rational(1) + z(5), 128)
    assert hr.lower <= GOLDEN_HI and GOLDEN_LO <= hr.upper
    assert hr.width <= Fraction(1, 10**10)


def test_requested_accuracy_met():
    a = z(7) + z(5) * 3 - 1
    for bits in (16, 64, 128):
        hr = house(a, bits)
        assert hr.width <= Fraction(1, 2**bits)


def test_precision_cap_raises():
    a = CycNum.from_rational(1) + z(5)
    with pytest.raises(UndecidedError):
        house(a, 10**6, cap=256)


def test_house_invariant_under_galois(rng):
    for _ in range(10):
        a = random_cycnum(rng, max_conductor=12, height=4)
        hr = house(a)
        for c in conjugates(a):
            hc = house(c)
            # same underlying number: enclosures must overlap
            assert hc.lower <= hr.upper and hr.lower <= hc.upper


def test_submultiplicative_and_subadditive(rng):
    for _ in range(12):
        a = random_cycnum(rng, max_conductor=8, height=4)
        b = random_cycnum(rng, max_conductor=8, height=4)
        hab = house(a * b)
        ha, hb = house(a), house(b)
        assert hab.lower <= ha.upper * hb.upper
        hsum = house(a + b)
        assert hsum.lower <= ha.upper + hb.upper


def test_kronecker_equivalence_small_corpus():
    thresh = 1 + Fraction(1, 2**30)
    corpus = []
    for m in (1, 2, 3, 4, 5, 7, 8):
        for k in range(m):
            corpus.append(z(m, k))
    for a in corpus:
        for b in corpus:
            v = a + b
            if not v:
                continue
            assert is_algebraic_integer(v)
            analytic = house(v, 64).upper <= thresh
            exact = is_root_of_unity(v) is not None
            assert analytic == exact, v
