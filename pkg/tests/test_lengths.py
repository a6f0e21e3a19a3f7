from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyspace import (
    LengthVector,
    chamber_data,
    degenerate_sign_vector,
    is_empty,
    is_generic,
    triple_ok,
)


def brute_min_abs(entries):
    """Oracle: minimum |signed sum| by enumerating all 2^m sign vectors."""
    best = None
    for signs in product((1, -1), repeat=len(entries)):
        total = abs(sum(s * e for s, e in zip(signs, entries)))
        if best is None or total < best:
            best = total
    return best


def sign_pattern(entries):
    """Oracle: the tuple of signs of every signed sum, in a fixed order."""
    out = []
    for signs in product((1, -1), repeat=len(entries)):
        total = sum(s * e for s, e in zip(signs, entries))
        out.append(0 if total == 0 else (1 if total > 0 else -1))
    return tuple(out)


small_vectors = st.builds(
    lambda parts: LengthVector(tuple(F(p, q) for p, q in parts)),
    st.lists(
        st.tuples(st.integers(1, 30), st.integers(1, 6)), min_size=3, max_size=9
    ),
)


def test_is_generic_examples():
    assert is_generic(LengthVector.parse("1,1,1,1,1"))
    assert not is_generic(LengthVector.parse("1,1,1,1"))
    # exhaustive oracle over all 2^5 sign vectors
    penta = LengthVector.parse("4,3,4,3,4")
    assert brute_min_abs(penta.entries) > 0
    assert is_generic(penta)


def test_chamber_radius_examples():
    assert chamber_data(LengthVector.parse("1,1,1")).radius == 1
    # all signed sums of 4,3,4,3,4 share the parity of 18; 4-3+4-3-4 attains 2
    assert chamber_data(LengthVector.parse("4,3,4,3,4")).radius == 2
    data = chamber_data(LengthVector.parse("1,1,1,1"))
    assert data.radius == 0 and data.empty is False


@settings(max_examples=60, deadline=None)
@given(small_vectors)
def test_chamber_radius_matches_brute_force(alpha):
    assert chamber_data(alpha).radius == brute_min_abs(alpha.entries)


@settings(max_examples=60, deadline=None)
@given(small_vectors)
def test_generic_iff_positive_radius(alpha):
    assert is_generic(alpha) == (chamber_data(alpha).radius > 0)


def test_degenerate_witness():
    signs = degenerate_sign_vector(LengthVector.parse("1,1,1,1"))
    assert signs is not None
    assert sum(s * e for s, e in zip(signs, [1, 1, 1, 1])) == 0
    assert signs[0] == 1
    assert degenerate_sign_vector(LengthVector.parse("4,3,4,3,4")) is None


def test_generic_invariant_under_permutation_and_scaling():
    base = LengthVector.of([F(7, 2), 3, F(11, 4), 5, 2])
    expected = is_generic(base)
    assert is_generic(base.permuted([4, 2, 0, 1, 3])) == expected
    for lam in (F(1, 2), F(3), F(7, 5)):
        assert is_generic(base.scaled(lam)) == expected


def test_is_empty_examples():
    assert is_empty(LengthVector.parse("4,3,11"))
    assert not is_empty(LengthVector.parse("1,1,1"))
    assert is_empty(LengthVector.parse("5,1,1,1"))  # 5 > 1+1+1


def test_triple_ok_examples():
    assert triple_ok(F(4), F(3), F(3))
    assert not triple_ok(F(4), F(3), F(11))
    # degenerate boundary: non-strict inequalities hold
    assert triple_ok(F(1), F(1), F(0))


def test_same_chamber_same_signs():
    # perturbations with m * max|delta| below the radius keep every signed
    # sum on its side of zero
    alpha = LengthVector.parse("4,3,4,3,4")
    radius = chamber_data(alpha).radius
    m = alpha.m
    step = radius / (2 * m)
    for deltas in [(step, 0, 0, 0, 0), (-step, step, 0, -step, 0)]:
        moved = LengthVector(tuple(a + d for a, d in zip(alpha, deltas)))
        assert sign_pattern(moved.entries) == sign_pattern(alpha.entries)


def test_parse_and_serialize_round_trip():
    for text in ("4,3,4,3,4", "1/2,1/2,1,1,1", "40/7,1/8,3,9/2"):
        assert LengthVector.parse(text).serialize() == text


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        LengthVector.parse("1,1")  # m < 3
    with pytest.raises(ValueError):
        LengthVector.parse("1,0,1")
    with pytest.raises(ValueError):
        LengthVector.parse("1,-2,1")
    with pytest.raises(ValueError):
        LengthVector.parse("1,,1")
    with pytest.raises(TypeError):
        LengthVector.of([0.5, 1, 1])  # binary floats are not exact input


def test_scaled_integers():
    alpha = LengthVector.parse("1/2,1/3,5")
    ints, scale = alpha.scaled_integers()
    assert scale == 6 and ints == (3, 2, 30)
    assert [F(v, scale) for v in ints] == list(alpha)
