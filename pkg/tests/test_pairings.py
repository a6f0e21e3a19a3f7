import random
from fractions import Fraction as F

import pytest

from polyspace import (
    DegreeMismatchError,
    ExponentVector,
    LengthVector,
    NonGenericError,
    PairingQuery,
    compositions,
    normalize,
    pairing_explicit,
    pairing_table,
)
from polyspace.verify import random_generic_lengths


def query(lengths, exponents):
    return PairingQuery(LengthVector.parse(lengths), ExponentVector.parse(exponents))


def test_normalize_examples():
    nq, perm = normalize(query("4,3,4,3,4", "2,0,0,0,0"))
    assert tuple(nq.lengths) == (3, 4, 3, 4, 4)
    assert tuple(nq.exponents) == (0, 0, 0, 0, 2)
    assert perm == (1, 2, 3, 4, 0)

    nq, perm = normalize(query("4,3,4,3,4", "0,0,0,0,2"))
    assert perm == (0, 1, 2, 3, 4)
    assert tuple(nq.lengths) == (4, 3, 4, 3, 4)

    nq, perm = normalize(query("1,1,1,2", "1,0,0,0"))
    assert tuple(nq.lengths) == (1, 1, 2, 1)
    assert tuple(nq.exponents) == (0, 0, 0, 1)


def test_normalize_keeps_at_least_three_leading_zeros():
    rng = random.Random(1)
    for _ in range(50):
        m = rng.randint(3, 10)
        counts = [0] * m
        for _ in range(m - 3):
            counts[rng.randrange(m)] += 1
        q = PairingQuery(
            LengthVector.of(range(1, m + 1)), ExponentVector(tuple(counts))
        )
        nq, perm = normalize(q)
        assert nq.exponents[0] == nq.exponents[1] == nq.exponents[2] == 0
        # the permutation really is the one that was applied
        assert tuple(nq.lengths) == tuple(q.lengths[i] for i in perm)
        assert tuple(nq.exponents) == tuple(q.exponents[i] for i in perm)


def test_pentagon_table_values():
    table = pairing_table(LengthVector.parse("4,3,4,3,4"))
    assert len(table) == 15
    squares = [v for ev, v in table.items() if max(ev) == 2]
    products = [v for ev, v in table.items() if max(ev) == 1]
    assert squares == [-3] * 5
    assert products == [1] * 10
    # canonical lexicographic ordering of the multidegrees
    keys = [tuple(ev) for ev in table]
    assert keys == sorted(keys)
    assert keys[0] == (0, 0, 0, 0, 2)


def test_projective_family_values():
    for m in range(4, 8):
        alpha = LengthVector.of([1] * (m - 1) + [m - 2])
        for comp in compositions(m - 3, m):
            value = pairing_explicit(PairingQuery(alpha, ExponentVector(comp))).value
            assert value == (-1) ** comp[-1]


def test_product_of_spheres_family_values():
    for m in range(5, 9):
        eps = F(1, m - 2)
        alpha = LengthVector.of([eps] * (m - 3) + [1, 1, 1])
        top = tuple([1] * (m - 3) + [0, 0, 0])
        for comp in compositions(m - 3, m):
            value = pairing_explicit(PairingQuery(alpha, ExponentVector(comp))).value
            assert value == (2 ** (m - 3) if comp == top else 0)


def test_point_and_empty_spaces():
    assert pairing_explicit(query("4,3,3", "0,0,0")).value == 1
    assert pairing_explicit(query("4,3,11", "0,0,0")).value == 0
    for ks in ("1,0,0,0", "0,0,0,1"):
        assert pairing_explicit(query("5,1,1,1", ks)).value == 0
    table = pairing_table(LengthVector.parse("9,1,1,1"))
    assert set(table.values()) == {0}


def test_errors():
    with pytest.raises(DegreeMismatchError) as info:
        pairing_explicit(query("4,3,4,3,4", "1,1,1,0,0"))
    assert "m-3 = 2" in str(info.value)
    with pytest.raises(NonGenericError) as info:
        pairing_explicit(query("1,1,1,1", "0,0,0,1"))
    assert info.value.signs is not None
    with pytest.raises(ValueError):
        PairingQuery(LengthVector.parse("1,1,1"), ExponentVector.parse("0,0,0,0"))


def test_permutation_invariance():
    rng = random.Random(2)
    for _ in range(25):
        m = rng.randint(4, 9)
        alpha = random_generic_lengths(rng, m)
        counts = [0] * m
        for _ in range(m - 3):
            counts[rng.randrange(m)] += 1
        k = ExponentVector(tuple(counts))
        base = pairing_explicit(PairingQuery(alpha, k)).value
        perm = list(range(m))
        rng.shuffle(perm)
        moved = pairing_explicit(
            PairingQuery(alpha.permuted(perm), k.permuted(perm))
        ).value
        assert moved == base


def test_square_exchange_invariance_exhaustive_m6():
    alpha = random_generic_lengths(random.Random(3), 6)
    values = {
        comp: pairing_explicit(PairingQuery(alpha, ExponentVector(comp))).value
        for comp in compositions(3, 6)
    }
    for comp, value in values.items():
        for i in range(6):
            if comp[i] < 2:
                continue
            for j in range(6):
                moved = list(comp)
                moved[i] -= 2
                moved[j] += 2
                assert values[tuple(moved)] == value


def test_threads_do_not_change_values():
    q = query("4,3,4,3,4", "0,0,0,0,2")
    assert pairing_explicit(q, threads=1).value == pairing_explicit(q, threads=4).value


def test_result_provenance():
    res = pairing_explicit(query("4,3,4,3,4", "2,0,0,0,0"))
    assert res.engine == "explicit"
    assert res.permutation == (1, 2, 3, 4, 0)
    assert res.value == -3
