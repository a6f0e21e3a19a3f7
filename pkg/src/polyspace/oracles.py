"""Independent pairing engines and equilateral closed forms.

Each engine takes a genuinely different route from the triangular-subset
count, so agreement between them is a meaningful cross-check: a recursion on
the edge count, an all-subsets sign formula weighted by -1/2, a second one
derived from volume derivatives weighted by 1/4 or 1/2, and binomial closed
forms for unit-length polygons.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import (
    DegreeMismatchError,
    EvenEdgeCountError,
    NonGenericError,
    ParityViolationError,
)
from .lengths import ExponentVector, LengthVector, _min_abs_signed_sum
from .pairings import (
    PairingQuery,
    PairingResult,
    compositions,
    ensure_admissible,
    normalize,
)
from .triangular import enumerate_negative_subsets, surplus_stream


def _recurse(a: list[int], k: list[int]) -> int:
    m = len(a)
    if m == 3:
        closes = a[0] <= a[1] + a[2] and a[1] <= a[0] + a[2] and a[2] <= a[0] + a[1]
        return 1 if closes else 0
    # Keep the positive exponents trailing so the last one is >= 1.
    order = sorted(range(m), key=lambda i: k[i] > 0)
    a = [a[i] for i in order]
    k = [k[i] for i in order]
    if a[-2] == a[-1]:
        # Tie between the two edges being split: nudge the last one upward by
        # less than the chamber radius.  Every signed sum keeps its side of
        # zero, so the pairing is unchanged and the split becomes defined.
        r = _min_abs_signed_sum(a)[0]
        a = [v * 2 * m for v in a]
        a[-1] += r
    sign = 1 if a[-2] > a[-1] else -1
    plus = a[:-2] + [a[-2] + a[-1]]
    minus = a[:-2] + [abs(a[-2] - a[-1])]
    knext = k[:-2] + [k[-2] + k[-1] - 1]
    weight = (-1) ** (k[-1] - 1) * sign ** (k[-2] + k[-1])
    return _recurse(plus, knext) + weight * _recurse(minus, knext)


def pairing_recursive(query: PairingQuery) -> PairingResult:
    """Pairing by repeatedly fusing the last two edges.

    With the last exponent positive, the value splits into the spaces where
    the two last edges are replaced by their sum and by their absolute
    difference, the last exponent dropping by one and the difference branch
    carrying a sign weight.  After m-3 steps only triangles remain, each
    contributing 1 when it closes and 0 otherwise.  Genericity survives both
    fusions, so no re-perturbation is needed along the way.
    """
    ensure_admissible(query)
    nq, perm = normalize(query)
    ints, _ = nq.lengths.scaled_integers()
    value = _recurse(list(ints), list(nq.exponents))
    return PairingResult(value=value, engine="recursion", permutation=perm)


def pairing_konno_takakura(query: PairingQuery) -> PairingResult:
    """Pairing as -1/2 of a signed count over the negative-surplus subsets.

    Every subset R of all edges with negative surplus contributes
    (-1)^(|R| + Σ_{i∈R} k_i); the resulting count is always even on generic
    input, and an odd count raises ParityViolationError.
    """
    ensure_admissible(query)
    nq, perm = normalize(query)
    odd = 0
    for i, e in enumerate(nq.exponents):
        if e & 1:
            odd |= 1 << i
    signed = 0
    for mask, size in enumerate_negative_subsets(nq.lengths):
        signed += -1 if (size + (mask & odd).bit_count()) & 1 else 1
    value, rem = divmod(-signed, 2)
    if rem:
        raise ParityViolationError(f"signed subset count {signed} is odd")
    return PairingResult(value=value, engine="kt", permutation=perm)


def pairing_yoshida(query: PairingQuery) -> PairingResult:
    """Pairing from the sign-of-surplus formula over edge subsets.

    For even m every subset contributes (-1)^(|R| + 1 + Σ_{i∉R} k_i) · sgn(S_R)
    and the total divides by 4; for odd m only odd-size subsets contribute
    (-1)^(1 + Σ_{i∉R} k_i) · sgn(S_R) and the total divides by 2.  A failed
    division raises ParityViolationError.
    """
    ensure_admissible(query)
    nq, perm = normalize(query)
    m = nq.m
    ints, _ = nq.lengths.scaled_integers()
    odd = 0
    for i, e in enumerate(nq.exponents):
        if e & 1:
            odd |= 1 << i
    deg_parity = (m - 3) & 1
    even_m = m % 2 == 0
    signed = 0
    for mask, s in surplus_stream(ints):
        if s == 0:
            signs = tuple(1 if (mask >> i) & 1 else -1 for i in range(m))
            pretty = ",".join(f"{x:+d}" for x in signs)
            raise NonGenericError(
                f"length vector {nq.lengths.serialize()} is not generic: "
                f"sign vector ({pretty}) gives signed sum 0",
                signs=signs,
            )
        size = mask.bit_count()
        if not even_m and size % 2 == 0:
            continue
        off_parity = (deg_parity + (mask & odd).bit_count()) & 1
        exponent = (size if even_m else 0) + 1 + off_parity
        term = 1 if s > 0 else -1
        signed += term if exponent & 1 == 0 else -term
    divisor = 4 if even_m else 2
    value, rem = divmod(signed, divisor)
    if rem:
        raise ParityViolationError(
            f"signed subset count {signed} not divisible by {divisor}"
        )
    return PairingResult(value=value, engine="yoshida", permutation=perm)


def equilateral_closed_form(m: int, k: int) -> Fraction:
    """Closed-form pairing value on the unit-length m-gon space.

    The value of any multidegree depends only on k = Σ floor(d_i / 2); the
    admissible range is 0 <= 2k <= m-3 with m odd.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"m must be an odd integer >= 3, got {m}")
    if k < 0 or 2 * k > m - 3:
        raise ValueError(f"need 0 <= 2k <= m-3, got k={k} for m={m}")
    sign = -1 if k & 1 else 1
    return Fraction(
        sign * comb((m - 3) // 2, k) * comb(m - 2, (m - 1) // 2),
        comb(m - 2, 2 * k + 1),
    )


def equilateral_pairing(m: int, degrees: Sequence[int] | ExponentVector) -> int:
    """Exact pairing of a multidegree on the unit-length m-gon space."""
    if m % 2 == 0:
        raise EvenEdgeCountError(
            f"the unit-length vector with {m} edges is not generic"
        )
    d = degrees if isinstance(degrees, ExponentVector) else ExponentVector.of(degrees)
    if len(d) != m:
        raise ValueError(f"expected {m} degrees, got {len(d)}")
    if d.total() != m - 3:
        raise DegreeMismatchError(
            f"degree total {d.total()} must equal m-3 = {m - 3} for m = {m}"
        )
    value = equilateral_closed_form(m, sum(e // 2 for e in d))
    if value.denominator != 1:
        raise ArithmeticError(f"closed form {value} is not an integer")
    return value.numerator


def multinomial(total: int, parts: Sequence[int]) -> int:
    out = 1
    rem = total
    for p in parts:
        out *= comb(rem, p)
        rem -= p
    return out


def sigma1_pairing(m: int, k: int) -> int:
    """Pairing of the k-th power of the full symmetric degree-2 class against
    the top power of a single class, on the unit-length m-gon quotient.

    Expanding the symmetric power gives one multidegree per composition of k;
    grouping the compositions by how many odd exponents they carry collapses
    the expansion to a short alternating sum of binomial ratios.  Only even k
    is admissible.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"m must be an odd integer >= 3, got {m}")
    if k % 2 or not 0 <= k <= m - 3:
        raise ValueError(f"need an even k with 0 <= k <= m-3, got k={k} for m={m}")
    weighted: dict[int, int] = {}
    for comp in compositions(k, m):
        odd_count = sum(1 for c in comp if c & 1)
        weighted[odd_count] = weighted.get(odd_count, 0) + multinomial(k, comp)
    total = Fraction(0)
    for j in range(k // 2 + 1):
        coeff = Fraction(comb((m - 3) // 2, j), comb(m - 2, 2 * j))
        if j & 1:
            coeff = -coeff
        total += coeff * weighted.get(2 * j, 0)
    sign = -1 if ((m - 3) // 2) & 1 else 1
    value = sign * comb(m - 2, (m - 1) // 2) * total
    if value.denominator != 1:
        raise ArithmeticError(f"symmetric pairing {value} is not an integer")
    return value.numerator


def _comb0(n: int, r: int) -> int:
    # comb with the usual "0 outside the range" convention, negative r included
    return comb(n, r) if 0 <= r <= n else 0


def alternating_binomial_convolution(a: int, b: int) -> tuple[int, int]:
    """Both sides of the odd-b alternating convolution identity.

    Left: Σ_{j=0}^{b} (-1)^j C(a,j) C(a+1,b-j).
    Right: (-1)^((b-1)/2) C(a,(b-1)/2).
    """
    if a < 0:
        raise ValueError("a must be nonnegative")
    if b < 1 or b % 2 == 0:
        raise ValueError("b must be a positive odd integer")
    lhs = sum((-1) ** j * _comb0(a, j) * _comb0(a + 1, b - j) for j in range(b + 1))
    h = (b - 1) // 2
    rhs = (-1) ** h * comb(a, h) if h <= a else 0
    return lhs, rhs


def equilateral_reduction_identity(m: int, k: int) -> tuple[Fraction, Fraction]:
    """Both sides of the alternating sum that collapses the equilateral signed
    count to a single binomial coefficient.

    Left: Σ_j (-1)^(j+k) C(2k+1,j) C(m-2k-3,(m-3)/2-j) C(m-2,2k+1)/C(m-2,(m-1)/2).
    Right: C((m-3)/2, k).
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"m must be an odd integer >= 3, got {m}")
    if k < 0 or 2 * k > m - 3:
        raise ValueError(f"need 0 <= 2k <= m-3, got k={k} for m={m}")
    h = (m - 3) // 2
    ratio = Fraction(comb(m - 2, 2 * k + 1), comb(m - 2, (m - 1) // 2))
    lhs = Fraction(0)
    for j in range(2 * k + 2):
        term = _comb0(2 * k + 1, j) * _comb0(m - 2 * k - 3, h - j)
        if (j + k) & 1:
            term = -term
        lhs += term * ratio
    return lhs, Fraction(comb(h, k))
