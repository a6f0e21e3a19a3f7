"""Intersection pairings via the signed count over triangular subsets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DegreeMismatchError
from .lengths import ExponentVector, LengthVector, require_generic
from .triangular import TriangularFamily, enumerate_triangular


@dataclass(frozen=True)
class PairingQuery:
    """A length vector together with the multidegree to integrate."""

    lengths: LengthVector
    exponents: ExponentVector

    def __post_init__(self):
        if len(self.lengths) != len(self.exponents):
            raise ValueError(
                f"{len(self.lengths)} lengths vs {len(self.exponents)} exponents"
            )

    @property
    def m(self) -> int:
        return len(self.lengths)


@dataclass(frozen=True)
class PairingResult:
    """An exact pairing value plus its provenance."""

    value: int
    engine: str
    permutation: tuple[int, ...]


def ensure_admissible(query: PairingQuery) -> None:
    """Raise DegreeMismatchError / NonGenericError unless the query is valid."""
    deg = query.exponents.total()
    if deg != query.m - 3:
        raise DegreeMismatchError(
            f"exponent total {deg} must equal m-3 = {query.m - 3} for m = {query.m}"
        )
    require_generic(query.lengths)


def normalize(query: PairingQuery) -> tuple[PairingQuery, tuple[int, ...]]:
    """Stable reorder of (length, exponent) pairs putting zero exponents first.

    Reordering both vectors by one permutation leaves the pairing unchanged.
    Whenever the degree condition holds at least three exponents vanish, so in
    the result the leading slots — in particular the first two, which anchor
    the triangle inequalities — all carry exponent zero.
    """
    k = query.exponents
    perm = tuple(sorted(range(query.m), key=lambda i: k[i] > 0))
    if perm == tuple(range(query.m)):
        return query, perm
    return PairingQuery(query.lengths.permuted(perm), k.permuted(perm)), perm


def _signed_member_count(family: TriangularFamily, exponents: ExponentVector) -> int:
    """Fold (-1)^(e(J) + m - |J|) over the family, where e(J) sums the
    exponents on the tail positions off J."""
    m = family.m
    deg = exponents.total()
    odd = 0
    for b, e in enumerate(exponents.entries[2:]):
        if e & 1:
            odd |= 1 << b
    const = (deg + m) & 1
    masks = family.masks
    if isinstance(masks, np.ndarray) and masks.size:
        sizes = np.bitwise_count(masks).astype(np.int64)
        dots = np.bitwise_count(masks & odd).astype(np.int64)
        parities = (const + sizes + dots) & 1
        return int(masks.size - 2 * int(parities.sum()))
    value = 0
    for mask in masks:
        mask = int(mask)
        p = (const + mask.bit_count() + (mask & odd).bit_count()) & 1
        value += 1 - 2 * p
    return value


def pairing_explicit(query: PairingQuery, threads: int = 1) -> PairingResult:
    """Pairing as a signed count of triangular subsets.

    After rotating the zero exponents to the front, each triangular subset J
    contributes (-1)^(e(J) + m - |J|) with e(J) the exponent total off J.  An
    empty family (in particular an empty polygon space) gives 0; at m = 3 the
    family is {{3}} exactly when the triangle closes, so the integral of 1
    over the one-point space comes out as 1.
    """
    ensure_admissible(query)
    nq, perm = normalize(query)
    family = enumerate_triangular(nq.lengths, threads=threads)
    value = _signed_member_count(family, nq.exponents)
    return PairingResult(value=value, engine="explicit", permutation=perm)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All length-`parts` tuples of nonnegative integers summing to `total`,
    in lexicographic order."""
    if parts <= 0:
        raise ValueError("parts must be positive")
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def pairing_table(alpha: LengthVector, threads: int = 1) -> dict[ExponentVector, int]:
    """Every multidegree of total m-3 with its pairing, in lexicographic order.

    Each entry is computed independently; the permutation and square-exchange
    symmetries are never used to shortcut the table (they stay available as
    external checks on it).
    """
    require_generic(alpha)
    out: dict[ExponentVector, int] = {}
    for comp in compositions(alpha.m - 3, alpha.m):
        ev = ExponentVector(comp)
        out[ev] = pairing_explicit(PairingQuery(alpha, ev), threads=threads).value
    return out
