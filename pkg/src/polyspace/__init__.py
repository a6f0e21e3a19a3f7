"""Exact intersection pairings and symplectic volumes of spatial polygon moduli.

The library computes the pairing of degree-2 cohomology classes on the moduli
space of closed polygons in 3-space with fixed side lengths, through four
independent exact engines, plus the exact symplectic volume and its sine
series.  All core arithmetic is rational/integer; nothing is approximate
except the explicitly numeric series estimate.
"""
from __future__ import annotations

from .errors import (
    CapacityError,
    DegreeMismatchError,
    EvenEdgeCountError,
    NonGenericError,
    ParityViolationError,
    PolyspaceError,
)
from .lengths import (
    ChamberData,
    ExponentVector,
    LengthVector,
    Rational,
    SignVector,
    chamber_data,
    degenerate_sign_vector,
    is_empty,
    is_generic,
    triple_ok,
)
from .oracles import (
    alternating_binomial_convolution,
    equilateral_closed_form,
    equilateral_pairing,
    equilateral_reduction_identity,
    pairing_konno_takakura,
    pairing_recursive,
    pairing_yoshida,
    sigma1_pairing,
)
from .pairings import (
    PairingQuery,
    PairingResult,
    compositions,
    normalize,
    pairing_explicit,
    pairing_table,
)
from .triangular import (
    MASK_BITS_MAX,
    TriangularFamily,
    enumerate_negative_subsets,
    enumerate_triangular,
    format_subset,
    is_triangular,
    iter_gray_signed_sums,
    signed_sum,
    subset_indices,
)
from .volume import (
    WittenEstimate,
    volume_exact,
    volume_mixed_partial,
    volume_witten_numeric,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ChamberData",
    "DegreeMismatchError",
    "EvenEdgeCountError",
    "ExponentVector",
    "LengthVector",
    "MASK_BITS_MAX",
    "NonGenericError",
    "PairingQuery",
    "PairingResult",
    "ParityViolationError",
    "PolyspaceError",
    "Rational",
    "SignVector",
    "TriangularFamily",
    "WittenEstimate",
    "alternating_binomial_convolution",
    "chamber_data",
    "compositions",
    "degenerate_sign_vector",
    "enumerate_negative_subsets",
    "enumerate_triangular",
    "equilateral_closed_form",
    "equilateral_pairing",
    "equilateral_reduction_identity",
    "format_subset",
    "is_empty",
    "is_generic",
    "is_triangular",
    "iter_gray_signed_sums",
    "normalize",
    "pairing_explicit",
    "pairing_konno_takakura",
    "pairing_recursive",
    "pairing_table",
    "pairing_yoshida",
    "sigma1_pairing",
    "signed_sum",
    "subset_indices",
    "triple_ok",
    "volume_exact",
    "volume_mixed_partial",
    "volume_witten_numeric",
]
