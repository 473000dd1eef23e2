"""Sequential locally recoverable codes built as Kronecker products of small codes."""

from __future__ import annotations

from .codes import LinearCode, make_BCH, make_D, make_P, make_R
from .expr import build, parse
from .field import Field, gf, make_extension_field, make_prime_field
from .matrix import Matrix, kernel, kronecker, rref, solve
from .slrc import (
    ProductCode,
    RecoveryVector,
    SlrcParams,
    alternativity,
    check_bounds,
    enumerate_recovery_vectors,
    lift_recovery_vector,
    locality,
    product_slrc,
    verify_slrc_exhaustive,
)

__version__ = "0.1.0"
