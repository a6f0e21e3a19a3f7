"""Enumeration of triangular subsets and of negative-surplus edge subsets.

Two subset universes appear here.  Triangular subsets live in the tail index
set I = {3,…,m}: bit b of a tail mask holds edge b+3.  The all-edges formulas
(negative-surplus family, volume sums) use subsets of {1,…,m}: bit i−1 holds
edge i.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import CapacityError, NonGenericError
from .lengths import LengthVector

MASK_BITS_MAX = 62
_BLOCK_BITS = 16
_INT64_LIMIT = 1 << 62


def _check_tail_mask(m: int, mask: int) -> None:
    if mask < 0 or mask >> (m - 2):
        raise ValueError(f"mask {mask:#x} has bits outside the {m - 2}-bit tail")


def subset_indices(mask: int, first: int = 3) -> tuple[int, ...]:
    """Set bits of a mask as 1-based edge indices, bit 0 mapping to `first`."""
    out = []
    b = 0
    while mask:
        if mask & 1:
            out.append(first + b)
        mask >>= 1
        b += 1
    return tuple(out)


def format_subset(mask: int, first: int = 3) -> str:
    """Render a subset mask as ``{3,5}`` in edge numbering."""
    return "{" + ",".join(str(i) for i in subset_indices(mask, first)) + "}"


def signed_sum(alpha: LengthVector, mask: int) -> Fraction:
    """Tail sum with weight +1 on the subset and -1 off it."""
    _check_tail_mask(alpha.m, mask)
    total = Fraction(0)
    for b, val in enumerate(alpha.entries[2:]):
        total += val if (mask >> b) & 1 else -val
    return total


def is_triangular(alpha: LengthVector, mask: int) -> bool:
    """Whether the subset's signed sum is positive and closes a triangle with
    the first two sides (non-strict triangle inequalities)."""
    l = signed_sum(alpha, mask)
    a1, a2 = alpha.entries[0], alpha.entries[1]
    return l > 0 and a1 <= a2 + l and a2 <= a1 + l and l <= a1 + a2


@dataclass
class TriangularFamily:
    """The triangular subsets of a length vector, in increasing mask order.

    ``masks[i]`` is the i-th subset and ``sums_scaled[i] / scale`` its signed
    sum.  Iteration yields ``(mask, Fraction)`` pairs.
    """

    m: int
    scale: int
    masks: np.ndarray
    sums_scaled: Sequence[int]

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        for mask, s in zip(self.masks, self.sums_scaled):
            yield int(mask), Fraction(int(s), self.scale)

    def subsets(self) -> list[tuple[int, ...]]:
        """Members as tuples of 1-based edge indices."""
        return [subset_indices(int(mask)) for mask in self.masks]


def iter_gray_signed_sums(
    alpha: LengthVector, start: int = 0, stop: int | None = None
) -> Iterator[tuple[int, Fraction]]:
    """Walk tail subsets in Gray-code order, one signed-sum update per step.

    Position i visits mask ``i ^ (i >> 1)``; consecutive positions differ in a
    single bit, so the signed sum changes by one addition.  The seed of a
    range is computed from scratch, which lets disjoint ranges of positions be
    walked independently and merged.
    """
    n = alpha.m - 2
    if n > MASK_BITS_MAX:
        raise CapacityError(f"{n} tail bits exceed the {MASK_BITS_MAX}-bit subset mask")
    size = 1 << n
    if stop is None:
        stop = size
    if not (0 <= start <= stop <= size):
        raise ValueError(f"positions [{start}, {stop}) outside [0, {size})")
    if start == stop:
        return
    ints, scale = alpha.scaled_integers()
    tail = ints[2:]
    steps = [2 * v for v in tail]
    mask = start ^ (start >> 1)
    val = sum(tail[b] if (mask >> b) & 1 else -tail[b] for b in range(n))
    yield mask, Fraction(val, scale)
    for i in range(start + 1, stop):
        b = (i & -i).bit_length() - 1
        mask ^= 1 << b
        val += steps[b] if (mask >> b) & 1 else -steps[b]
        yield mask, Fraction(val, scale)


def _gray_collect_ints(
    tail: Sequence[int], lo: int, hi: int
) -> tuple[list[int], list[int]]:
    # Full Gray walk with plain integers; used when values exceed int64.
    n = len(tail)
    steps = [2 * v for v in tail]
    mask = 0
    val = -sum(tail)
    masks, sums = [], []
    if 0 < val and lo <= val <= hi:
        masks.append(mask)
        sums.append(val)
    for i in range(1, 1 << n):
        b = (i & -i).bit_length() - 1
        mask ^= 1 << b
        val += steps[b] if (mask >> b) & 1 else -steps[b]
        if 0 < val and lo <= val <= hi:
            masks.append(mask)
            sums.append(val)
    order = sorted(range(len(masks)), key=masks.__getitem__)
    return [masks[i] for i in order], [sums[i] for i in order]


def _scan_blocks_numpy(
    tail: Sequence[int], lo: int, hi: int, threads: int
) -> tuple[np.ndarray, np.ndarray]:
    n = len(tail)
    low_bits = min(n, _BLOCK_BITS)
    low = np.zeros(1, dtype=np.int64)
    for v in tail[:low_bits]:
        low = np.concatenate((low, low + 2 * v))
    high = np.zeros(1, dtype=np.int64)
    for v in tail[low_bits:]:
        high = np.concatenate((high, high + 2 * v))
    base = -sum(tail)

    def scan(h0: int, h1: int) -> tuple[list[np.ndarray], list[np.ndarray]]:
        got_masks, got_sums = [], []
        for h in range(h0, h1):
            vals = low + (base + int(high[h]))
            sel = (vals > 0) & (vals >= lo) & (vals <= hi)
            ids = np.nonzero(sel)[0]
            if ids.size:
                got_masks.append(ids.astype(np.int64) + (h << low_bits))
                got_sums.append(vals[ids])
        return got_masks, got_sums

    # Fixed-size block ranges: the split does not depend on the worker count,
    # and results concatenate in block order, so output is identical for any
    # number of threads.  2^18 masks per task keeps enough tasks in flight
    # for an 8-way pool at the 2^22 scale while task overhead stays small.
    step = max(1, (1 << 18) >> low_bits)
    ranges = [(h, min(h + step, high.size)) for h in range(0, high.size, step)]
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: scan(*r), ranges))
    else:
        parts = [scan(*r) for r in ranges]

    mask_arrays = [arr for p in parts for arr in p[0]]
    sum_arrays = [arr for p in parts for arr in p[1]]
    if not mask_arrays:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(mask_arrays), np.concatenate(sum_arrays)


def enumerate_triangular(alpha: LengthVector, threads: int = 1) -> TriangularFamily:
    """All triangular subsets of the tail, in increasing bitmask order.

    The triangular test collapses to a window test on the signed sum l:
    |α_1 − α_2| ≤ l ≤ α_1 + α_2 together with l > 0, so the scan only needs
    the subset sums.  These are built blockwise by doubling; blocks may be
    handed to worker threads, with output independent of the thread count.
    """
    m = alpha.m
    n = m - 2
    if n > MASK_BITS_MAX:
        raise CapacityError(f"{n} tail bits exceed the {MASK_BITS_MAX}-bit subset mask")
    ints, scale = alpha.scaled_integers()
    lo = abs(ints[0] - ints[1])
    hi = ints[0] + ints[1]
    tail = ints[2:]
    if hi + sum(tail) < _INT64_LIMIT:
        masks, sums = _scan_blocks_numpy(tail, lo, hi, max(1, threads))
        return TriangularFamily(m=m, scale=scale, masks=masks, sums_scaled=sums)
    masks_list, sums_list = _gray_collect_ints(tail, lo, hi)
    return TriangularFamily(
        m=m,
        scale=scale,
        masks=np.array(masks_list, dtype=np.int64),
        sums_scaled=sums_list,
    )


def surplus_stream(ints: Sequence[int]) -> Iterator[tuple[int, int]]:
    """Yield (mask, surplus) over all subsets of {1,…,m} in mask order.

    The surplus of a subset R is Σ_{i∈R} a_i − Σ_{i∉R} a_i.  Streams in
    blocks of at most 2^16 precomputed low-bit sums, so memory stays flat
    while the subset count can be Θ(2^m).
    """
    m = len(ints)
    total = sum(ints)
    low_bits = min(m, _BLOCK_BITS)
    lowtab = [0]
    for v in ints[:low_bits]:
        lowtab = lowtab + [s + 2 * v for s in lowtab]
    nhigh = m - low_bits
    for hm in range(1 << nhigh):
        hsum = 0
        t = hm
        b = 0
        while t:
            if t & 1:
                hsum += 2 * ints[low_bits + b]
            t >>= 1
            b += 1
        base = hsum - total
        high_part = hm << low_bits
        for lm, ls in enumerate(lowtab):
            yield high_part | lm, base + ls


def enumerate_negative_subsets(alpha: LengthVector) -> Iterator[tuple[int, int]]:
    """Stream the subsets of all edges whose surplus is negative.

    Yields (mask, |R|) in increasing mask order, bit i−1 holding edge i.
    A zero surplus cannot happen for generic lengths; hitting one raises
    NonGenericError with the offending sign vector.
    """
    m = alpha.m
    if m > MASK_BITS_MAX:
        raise CapacityError(f"{m} edges exceed the {MASK_BITS_MAX}-bit subset mask")
    ints, _ = alpha.scaled_integers()
    for mask, s in surplus_stream(ints):
        if s < 0:
            yield mask, mask.bit_count()
        elif s == 0:
            signs = tuple(1 if (mask >> i) & 1 else -1 for i in range(m))
            pretty = ",".join(f"{x:+d}" for x in signs)
            raise NonGenericError(
                f"length vector {alpha.serialize()} is not generic: "
                f"sign vector ({pretty}) gives signed sum 0",
                signs=signs,
            )
