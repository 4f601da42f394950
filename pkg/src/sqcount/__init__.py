"""Exact counting of representations as sums of squares in Z_n."""

from .compose import (
    CountQuery,
    CountResult,
    FormulaNotCovered,
    Policy,
    Variant,
    count,
    full_distribution,
)
from .modarith import (
    DomainError,
    Factorization,
    PadicDecomposition,
    PrimePower,
    crt_split,
    factorize,
    legendre,
    padic_decompose,
    sqrt_mod_pk,
)
from .oracle import CapacityError, Histogram, oracle_count

__all__ = [
    "CapacityError",
    "CountQuery",
    "CountResult",
    "DomainError",
    "Factorization",
    "FormulaNotCovered",
    "Histogram",
    "PadicDecomposition",
    "Policy",
    "PrimePower",
    "Variant",
    "count",
    "crt_split",
    "factorize",
    "full_distribution",
    "legendre",
    "oracle_count",
    "padic_decompose",
    "sqrt_mod_pk",
]
