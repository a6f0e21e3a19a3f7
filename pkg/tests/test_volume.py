import math
import random
from fractions import Fraction as F
from math import factorial

import pytest

from polyspace import (
    ExponentVector,
    LengthVector,
    NonGenericError,
    PairingQuery,
    is_empty,
    pairing_explicit,
    volume_exact,
    volume_mixed_partial,
    volume_witten_numeric,
)
from polyspace.verify import random_exponents, random_generic_lengths


def brute_volume(alpha):
    """Oracle: the signed power sum evaluated directly in Fraction arithmetic."""
    m = alpha.m
    d = m - 3
    total = sum(alpha.entries)
    acc = F(0)
    for mask in range(1 << m):
        size = bin(mask).count("1")
        s = 2 * sum(alpha.entries[i] for i in range(m) if (mask >> i) & 1) - total
        sign = 1 if s > 0 else -1
        if m % 2 == 0:
            acc += (-1) ** size * sign * s**d
        elif size % 2 == 1:
            acc += sign * s**d
    return -acc / ((4 if m % 2 == 0 else 2) * factorial(d))


def test_volume_examples():
    # odd-m sum over the 4 odd subsets: -(1/2)(-1-1-1+1) = 1
    assert volume_exact(LengthVector.parse("1,1,1")) == 1
    assert brute_volume(LengthVector.parse("1,1,1")) == 1
    # even-m sum over all 16 subsets
    assert volume_exact(LengthVector.parse("1,1,1,2")) == 1
    assert brute_volume(LengthVector.parse("1,1,1,2")) == 1
    # empty space: the signed terms cancel
    assert volume_exact(LengthVector.parse("4,3,11")) == 0


def test_volume_matches_brute_force():
    rng = random.Random(41)
    for m in range(3, 9):
        alpha = random_generic_lengths(rng, m)
        assert volume_exact(alpha) == brute_volume(alpha)


def test_volume_scaling_and_permutation():
    rng = random.Random(43)
    for m in (4, 5, 7):
        alpha = random_generic_lengths(rng, m)
        base = volume_exact(alpha)
        for lam in (F(1, 2), F(3), F(5, 3)):
            assert volume_exact(alpha.scaled(lam)) == lam ** (m - 3) * base
        perm = list(range(m))
        rng.shuffle(perm)
        assert volume_exact(alpha.permuted(perm)) == base


def test_volume_positive_iff_nonempty():
    rng = random.Random(47)
    for m in (4, 5, 6, 7):
        alpha = random_generic_lengths(rng, m)
        vol = volume_exact(alpha)
        if is_empty(alpha):
            assert vol == 0
        else:
            assert vol > 0
        # force a dominant first edge: empty and volume zero
        rest = list(alpha.entries)[1:]
        dominant = LengthVector(tuple([sum(rest) + F(1, 3)] + rest))
        assert is_empty(dominant)
        assert volume_exact(dominant) == 0


def test_volume_requires_generic():
    with pytest.raises(NonGenericError):
        volume_exact(LengthVector.parse("1,1,1,1"))


def test_witten_series_small_alpha():
    alpha = LengthVector.of([F(1, 10), F(1, 10), F(1, 10), F(2, 10)])
    est = volume_witten_numeric(alpha, 20000)
    target = float(volume_exact(alpha))  # 1/10 by the scaling law
    assert abs(est.value - target) <= est.tail_bound + 1e-9
    # empty space, scaled small: the series vanishes up to the tail
    empty = LengthVector.of([F(5, 20), F(1, 20), F(1, 20), F(1, 20)])
    est_empty = volume_witten_numeric(empty, 20000)
    assert abs(est_empty.value) <= est_empty.tail_bound + 1e-9


def test_witten_partial_sum_contract():
    alpha = LengthVector.of([F(1, 10), F(1, 7), F(1, 5), F(2, 7)])
    one = volume_witten_numeric(alpha, 1)
    two = volume_witten_numeric(alpha, 2)
    s = alpha.m - 2
    term2 = (2.0 ** (alpha.m - 1) / math.pi**s) * abs(
        math.prod(math.sin(math.pi * float(e) * 2) for e in alpha)
    ) / 2.0**s
    assert abs(two.value - one.value) <= term2 + 1e-12
    assert two.tail_bound < one.tail_bound


def test_witten_rejects_bad_input():
    with pytest.raises(ValueError):
        volume_witten_numeric(LengthVector.of([F(1, 10)] * 3), 10)  # m < 4
    with pytest.raises(ValueError):
        volume_witten_numeric(LengthVector.of([1, 1, 1, 2]), 10)  # sides >= 1
    with pytest.raises(ValueError):
        volume_witten_numeric(LengthVector.of([F(1, 10)] * 4), 0)


def test_mixed_partial_examples():
    penta = LengthVector.parse("4,3,4,3,4")
    assert volume_mixed_partial(penta, ExponentVector.parse("0,0,0,0,2")) == -3
    assert volume_mixed_partial(penta, ExponentVector.parse("0,0,0,1,1")) == 1
    quad = LengthVector.parse("1,1,1,2")
    assert volume_mixed_partial(quad, ExponentVector.parse("0,0,0,1")) == -1
    spheres = LengthVector.of([F(1, 3), F(1, 3), 1, 1, 1])
    assert volume_mixed_partial(spheres, ExponentVector.parse("1,1,0,0,0")) == 4
    point = LengthVector.parse("4,3,3")
    assert volume_mixed_partial(point, ExponentVector.parse("0,0,0")) == 1


def test_mixed_partial_matches_pairing():
    rng = random.Random(53)
    for _ in range(12):
        m = rng.randint(3, 7)
        alpha = random_generic_lengths(rng, m)
        k = random_exponents(rng, m)
        assert volume_mixed_partial(alpha, k) == pairing_explicit(
            PairingQuery(alpha, k)
        ).value
