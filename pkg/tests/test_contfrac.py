import random
from decimal import Decimal, localcontext
from fractions import Fraction
from math import floor, sqrt

import pytest

from latcurve.contfrac import (BasicTriangle, cf_expand, convergents_of, find_suitable,
                               noses_stretch)
from latcurve.errors import NoCrossingError, PrecisionExhausted

GOLDEN = (sqrt(5) - 1) / 2


def test_two_fifths():
    cf = cf_expand(Fraction(2, 5), 10)
    assert cf.partial_quotients == [2, 2]
    assert cf.convergents == [(1, 2), (2, 5)]
    assert cf.value() == Fraction(2, 5)


def test_golden_conjugate_fibonacci():
    cf = cf_expand(GOLDEN, 30)
    assert cf.partial_quotients == [1] * 30
    fib = [1, 1]
    while len(fib) < 32:
        fib.append(fib[-1] + fib[-2])
    assert cf.convergents == [(fib[k], fib[k + 1]) for k in range(30)]


def test_float_precision_exhausted():
    with pytest.raises(PrecisionExhausted):
        cf_expand(GOLDEN, 60)


def test_decimal_input_extends_depth():
    with localcontext() as ctx:
        ctx.prec = 80
        alpha = (Decimal(5).sqrt() - 1) / 2
    assert cf_expand(alpha, 60).partial_quotients == [1] * 60


def test_random_rationals_determinants():
    rng = random.Random(2)
    for _ in range(300):
        q = rng.randint(2, 10 ** 9)
        a = Fraction(rng.randint(1, q - 1), q)
        cf = cf_expand(a, 200)
        assert cf.value() == a
        cs = cf.convergents
        for (p1, q1), (p2, q2) in zip(cs, cs[1:]):
            assert abs(p1 * q2 - p2 * q1) == 1
            assert q2 > q1


def test_convergents_seed():
    assert convergents_of([3]) == [(1, 3)]


def test_alpha_out_of_range():
    with pytest.raises(ValueError):
        cf_expand(Fraction(3, 2), 3)


def test_noses_stretch_hand_instance():
    # B_i = (i, 1); the ray y = 2x/5 is crossed between (2,1) and (3,1)
    assert noses_stretch((1, 0), (0, 1), Fraction(2, 5)) == BasicTriangle((2, 1), (3, 1))
    assert noses_stretch((1, 0), (0, 1), 0.7) == BasicTriangle((1, 1), (2, 1))


def test_noses_stretch_index_sweep():
    prev = None
    for j in range(1, 400):
        alpha = Fraction(j, 401)
        if (1 / alpha).denominator == 1:
            continue
        tri = noses_stretch((1, 0), (0, 1), alpha)
        i = tri.B[0]
        assert i == floor(1 / alpha) + 1
        assert tri.crosses_ray(alpha)
        if prev is not None:
            assert i <= prev
        prev = i


def test_noses_stretch_errors():
    with pytest.raises(NoCrossingError):
        noses_stretch((1, 0), (0, 1), Fraction(1, 2))  # hits the vertex (2, 1)
    with pytest.raises(NoCrossingError):
        noses_stretch((1, 0), (1, 1), Fraction(3, 2))  # ray outside the angle
    with pytest.raises(ValueError):
        noses_stretch((2, 0), (0, 1), Fraction(1, 3))


def test_basic_triangle_invariant():
    with pytest.raises(ValueError):
        BasicTriangle((2, 0), (0, 1))


def test_find_suitable_inverse_sqrt2():
    alpha = 1 / sqrt(2)
    tri = find_suitable(alpha, 0.3, 10 ** 6)
    assert tri is not None
    assert tri.crosses_ray(alpha)
    assert tri.side_ratio() > 0.7 and tri.apex_angle() < 0.3


def test_find_suitable_golden_hard_case():
    assert find_suitable(GOLDEN, 0.37, 10 ** 7) is None
    assert find_suitable(GOLDEN, 0.39, 10 ** 7) is not None


def test_find_suitable_rational_endpoint():
    assert find_suitable(Fraction(2, 7), 0.2, 10 ** 6) is None
