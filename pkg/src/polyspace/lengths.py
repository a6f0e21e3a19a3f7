"""Length vectors, genericity tests, and chamber geometry.

Everything here is exact: side lengths are `fractions.Fraction` values, and
every comparison or signed sum happens in integer arithmetic after clearing
denominators.  No tolerance parameter exists anywhere.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

import numpy as np

from .errors import NonGenericError

# All exact scalar work runs on the stdlib rational type.
Rational = Fraction

# A sign assignment, one value in {+1, -1} per edge.
SignVector = tuple[int, ...]

_INT64_LIMIT = 1 << 62


def _as_rational(value) -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class LengthVector:
    """Ordered side lengths of a closed spatial polygon.

    At least three sides, every entry a strictly positive rational.  Use
    :meth:`of` to coerce from ints/strings/Fractions or :meth:`parse` for
    comma-separated literals such as ``"4,3,4,3,4"`` or ``"1/2,1/2,1,1,1"``.
    """

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) < 3:
            raise ValueError("a polygon needs at least 3 sides")
        for e in self.entries:
            if not isinstance(e, Fraction):
                raise TypeError("entries must be Fraction values; use LengthVector.of")
            if e <= 0:
                raise ValueError(f"side lengths must be positive, got {e}")

    @classmethod
    def of(cls, values) -> "LengthVector":
        return cls(tuple(_as_rational(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "LengthVector":
        parts = [p.strip() for p in text.split(",")]
        if any(not p for p in parts):
            raise ValueError(f"malformed length list {text!r}")
        return cls.of(parts)

    @property
    def m(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def serialize(self) -> str:
        """Comma-separated reduced rational literals, the same shape parse reads."""
        return ",".join(str(e) for e in self.entries)

    def scaled_integers(self) -> tuple[tuple[int, ...], int]:
        """Common-denominator view: positive integer sides plus the scale.

        ``entries[i] == ints[i] / scale`` exactly.  All sign and triangle
        tests are homogeneous, so they can run on the integer view.
        """
        scale = lcm(*(e.denominator for e in self.entries))
        return tuple(e.numerator * (scale // e.denominator) for e in self.entries), scale

    def permuted(self, perm: Sequence[int]) -> "LengthVector":
        return LengthVector(tuple(self.entries[i] for i in perm))

    def scaled(self, factor: Fraction) -> "LengthVector":
        return LengthVector(tuple(e * factor for e in self.entries))


@dataclass(frozen=True)
class ExponentVector:
    """Multidegree of a pairing, one nonnegative integer per edge."""

    entries: tuple[int, ...]

    def __post_init__(self):
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise ValueError(f"exponents must be nonnegative integers, got {e!r}")

    @classmethod
    def of(cls, values) -> "ExponentVector":
        return cls(tuple(int(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "ExponentVector":
        parts = [p.strip() for p in text.split(",")]
        if any(not p for p in parts):
            raise ValueError(f"malformed exponent list {text!r}")
        return cls(tuple(int(p) for p in parts))

    def total(self) -> int:
        return sum(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def serialize(self) -> str:
        return ",".join(str(e) for e in self.entries)

    def permuted(self, perm: Sequence[int]) -> "ExponentVector":
        return ExponentVector(tuple(self.entries[i] for i in perm))


@dataclass(frozen=True)
class ChamberData:
    """How far a length vector sits from the walls of its chamber.

    ``radius`` is the minimum of |Σ ε_i α_i| over all sign vectors ε; it is
    positive exactly when the vector is generic.  Any perturbation with
    m · max|δ_i| below the radius keeps every signed sum on the same side of
    zero, hence stays in the same chamber.
    """

    radius: Fraction
    empty: bool


def _pattern_sums_numpy(values: Sequence[int]) -> np.ndarray:
    out = np.zeros(1, dtype=np.int64)
    for v in values:
        out = np.concatenate((out - v, out + v))
    return out


def _pattern_sums_python(values: Sequence[int]) -> list[int]:
    out = [0]
    for v in values:
        out = [s - v for s in out] + [s + v for s in out]
    return out


def _min_abs_signed_sum(ints: Sequence[int]) -> tuple[int, SignVector]:
    """Minimum of |Σ ε_i a_i| over sign vectors, with a witness attaining it.

    The first sign is pinned to +1 (a global flip negates every sum), and the
    remaining indices meet in the middle, so the cost is O(2^(m/2) · m)
    rather than O(2^(m-1)).  Bit b of a pattern index means "+" for the b-th
    value of its half.
    """
    m = len(ints)
    rest = ints[1:]
    half = len(rest) // 2
    left, right = rest[:half], rest[half:]

    best: tuple[int, int, int] | None = None  # (|sum|, left index, right index)
    if sum(abs(v) for v in ints) < _INT64_LIMIT:
        av = ints[0] + _pattern_sums_numpy(left)
        bv = _pattern_sums_numpy(right)
        order = np.argsort(bv, kind="stable")
        bs = bv[order]
        pos = np.searchsorted(bs, -av)
        for off in (-1, 0):
            idx = np.clip(pos + off, 0, bs.size - 1)
            tot = np.abs(av + bs[idx])
            j = int(np.argmin(tot))
            cand = (int(tot[j]), j, int(order[int(idx[j])]))
            if best is None or cand[0] < best[0]:
                best = cand
    else:
        av_list = [ints[0] + s for s in _pattern_sums_python(left)]
        bv_list = _pattern_sums_python(right)
        ordered = sorted((v, i) for i, v in enumerate(bv_list))
        bs_list = [v for v, _ in ordered]
        for ai, a in enumerate(av_list):
            p = bisect.bisect_left(bs_list, -a)
            for idx in (p - 1, p):
                if 0 <= idx < len(bs_list):
                    cand = (abs(a + bs_list[idx]), ai, ordered[idx][1])
                    if best is None or cand[0] < best[0]:
                        best = cand

    assert best is not None
    value, ai, bi = best
    signs = [1] * m
    for b in range(len(left)):
        signs[1 + b] = 1 if (ai >> b) & 1 else -1
    for b in range(len(right)):
        signs[1 + half + b] = 1 if (bi >> b) & 1 else -1
    return value, tuple(signs)


def degenerate_sign_vector(alpha: LengthVector) -> SignVector | None:
    """A sign vector with vanishing signed sum, or None when alpha is generic."""
    ints, _ = alpha.scaled_integers()
    value, signs = _min_abs_signed_sum(ints)
    return signs if value == 0 else None


def is_generic(alpha: LengthVector) -> bool:
    """True when no choice of signs makes the sides sum to zero."""
    ints, _ = alpha.scaled_integers()
    return _min_abs_signed_sum(ints)[0] != 0


def require_generic(alpha: LengthVector) -> None:
    signs = degenerate_sign_vector(alpha)
    if signs is not None:
        pretty = ",".join(f"{s:+d}" for s in signs)
        raise NonGenericError(
            f"length vector {alpha.serialize()} is not generic: "
            f"sign vector ({pretty}) gives signed sum 0",
            signs=signs,
        )


def chamber_data(alpha: LengthVector) -> ChamberData:
    """Chamber radius and emptiness flag for a length vector."""
    ints, scale = alpha.scaled_integers()
    value, _ = _min_abs_signed_sum(ints)
    return ChamberData(radius=Fraction(value, scale), empty=is_empty(alpha))


def is_empty(alpha: LengthVector) -> bool:
    """True when the longest side exceeds the sum of all the others, so no
    closed polygon with these side lengths exists."""
    total = sum(alpha.entries)
    return 2 * max(alpha.entries) > total


def triple_ok(a: Fraction, b: Fraction, c: Fraction) -> bool:
    """Non-strict triangle inequalities for sides (a, b, c)."""
    return a <= b + c and b <= a + c and c <= a + b
