"""Exact symplectic volumes, the sine-series estimate, and the derivative
bridge from volumes back to pairings."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Sequence

from .lengths import ExponentVector, LengthVector, chamber_data, require_generic
from .pairings import PairingQuery, ensure_admissible
from .triangular import surplus_stream


@dataclass(frozen=True)
class WittenEstimate:
    """Partial sine-series value with a rigorous bound on the dropped tail."""

    value: float
    tail_bound: float


def volume_exact(alpha: LengthVector) -> Fraction:
    """Symplectic volume as a signed power sum over edge subsets.

    For even m the sum runs over every subset R with weight
    (-1)^|R| sgn(S_R) S_R^(m-3) and prefactor -1/(4 (m-3)!); odd m keeps only
    the odd-size subsets with prefactor -1/(2 (m-3)!).  S_R is the surplus
    Σ_{i∈R} α_i − Σ_{i∉R} α_i, never zero on generic input.
    """
    require_generic(alpha)
    ints, scale = alpha.scaled_integers()
    m = alpha.m
    d = m - 3
    even_m = m % 2 == 0
    acc = 0
    for mask, s in surplus_stream(ints):
        size = mask.bit_count()
        if not even_m and size % 2 == 0:
            continue
        term = s**d if s > 0 else -(s**d)
        if even_m and size & 1:
            term = -term
        acc += term
    divisor = (4 if even_m else 2) * factorial(d) * scale**d
    return Fraction(-acc, divisor)


def volume_witten_numeric(alpha: LengthVector, terms: int) -> WittenEstimate:
    """Truncated sine series for the volume in the flat-connection regime.

    vol ≈ (2^(m-1) / π^(m-2)) Σ_{k=1}^{terms} Π_i sin(k π α_i) / k^(m-2),
    valid for m >= 4 with every side in (0,1).  Sine arguments are reduced
    exactly modulo the period in integer arithmetic, the partial sum is
    compensated, and the tail bound covers everything past `terms` via
    Σ_{k>N} k^(1-s) <= N^(1-s)/(s-1) with s = m-2.
    """
    m = alpha.m
    if m < 4:
        raise ValueError("the series needs at least 4 edges")
    if any(not (0 < e < 1) for e in alpha.entries):
        raise ValueError("every side length must lie strictly between 0 and 1")
    if terms < 1:
        raise ValueError("terms must be at least 1")
    s = m - 2
    nums = [e.numerator for e in alpha.entries]
    dens = [e.denominator for e in alpha.entries]
    total = 0.0
    comp = 0.0
    for k in range(1, terms + 1):
        prod = 1.0
        for p, q in zip(nums, dens):
            prod *= math.sin(math.pi * ((k * p) % (2 * q)) / q)
        term = prod / float(k) ** s
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    # 2^(m-1)/pi^(m-2): normalized so the small-side limit agrees with
    # volume_exact in the side-length convention (the bare 4/pi^(m-2)
    # constant belongs to a half-length parametrization, off by 2^(m-3)).
    pref = 2.0 ** (m - 1) / math.pi**s
    tail = pref * float(terms) ** (1 - s) / (s - 1)
    return WittenEstimate(value=pref * total, tail_bound=tail)


def volume_mixed_partial(
    alpha: LengthVector, exponents: Sequence[int] | ExponentVector
) -> Fraction:
    """Mixed partial derivative of the volume, of the multidegree's order,
    computed exactly by forward differencing.

    Inside a chamber the volume is a polynomial of total degree m-3 in the
    side lengths, so once the step is small enough that the whole forward
    stencil stays in the chamber, the iterated difference divided by h^(m-3)
    has zero truncation error.  The step h = radius / (2 m (m-3) + 2) keeps
    the stencil's total displacement below half the chamber radius.
    """
    k = exponents if isinstance(exponents, ExponentVector) else ExponentVector.of(exponents)
    ensure_admissible(PairingQuery(alpha, k))
    m = alpha.m
    d = m - 3
    if d == 0:
        return volume_exact(alpha)
    radius = chamber_data(alpha).radius
    h = radius / (2 * m * d + 2)
    acc = Fraction(0)
    for offsets in product(*(range(e + 1) for e in k)):
        coeff = 1
        for e, j in zip(k, offsets):
            c = comb(e, j)
            coeff *= -c if (e - j) & 1 else c
        point = LengthVector(tuple(a + h * j for a, j in zip(alpha, offsets)))
        acc += coeff * volume_exact(point)
    return acc / h**d
