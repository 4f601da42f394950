"""Brute-force ground truth for sums-of-squares counts.

The oracle builds the histogram of x^2 over Z_n (or its units) and raises it
to the m-th cyclic-convolution power by squaring. Counts stay exact: the
int64 kernels are used only when a conservative bound rules out overflow,
otherwise a big-integer path over the nonzero entries takes over.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd

import numpy as np

from . import _kernels
from .modarith import DomainError

MODULUS_GUARD = 1 << 20

_INT64_SAFE = 1 << 62


class CapacityError(RuntimeError):
    """The requested modulus exceeds the oracle's memory guard."""


@dataclass
class Histogram:
    """Per-residue representation counts over Z_n."""

    n: int
    counts: list[int]


def square_histogram(n: int, units_only: bool = False) -> Histogram:
    """counts[s] = number of x in Z_n (or Z_n^*) with x^2 = s mod n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    counts = [0] * n
    for x in range(n):
        if units_only and gcd(x, n) != 1:
            continue
        counts[x * x % n] += 1
    return Histogram(n, counts)


def _convolve_bigint(a: list[int], b: list[int], n: int) -> list[int]:
    # Exact path for entries too large for int64; cost is nnz(a) * nnz(b).
    out = [0] * n
    nz_b = [(j, bj) for j, bj in enumerate(b) if bj]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in nz_b:
            k = i + j
            if k >= n:
                k -= n
            out[k] += ai * bj
    return out


def _convolve(a: list[int], b: list[int], n: int) -> list[int]:
    bound = min(sum(a) * max(b), max(a) * sum(b))
    if bound < _INT64_SAFE:
        arr_a = np.array(a, dtype=np.int64)
        arr_b = np.array(b, dtype=np.int64)
        return _kernels.cyclic_convolve(arr_a, arr_b).tolist()
    return _convolve_bigint(a, b, n)


def convolve_power(h: Histogram, m: int) -> Histogram:
    """m-fold cyclic self-convolution of h, by exponentiation by squaring."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    n = h.n
    base = list(h.counts)
    result: list[int] | None = None
    e = m
    while e:
        if e & 1:
            result = base if result is None else _convolve(result, base, n)
        e >>= 1
        if e:
            base = _convolve(base, base, n)
    assert result is not None
    return Histogram(n, result)


@lru_cache(maxsize=256)
def _count_table(m: int, n: int, units_only: bool) -> tuple[int, ...]:
    h = convolve_power(square_histogram(n, units_only), m)
    return tuple(h.counts)


def oracle_count(m: int, t: int, n: int, units_only: bool = False) -> int:
    """Exact |S_m(t, n)| (or the unit-restricted count) by convolution."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n > MODULUS_GUARD:
        raise CapacityError(f"n={n} exceeds oracle guard {MODULUS_GUARD}")
    if not 0 <= t < n:
        raise DomainError(f"t={t} out of range for modulus {n}")
    return _count_table(m, n, units_only)[t]


def enumerate_count(m: int, t: int, n: int, units_only: bool = False) -> int:
    """Literal nested enumeration over Z_n^m; validates the convolution path.

    Deliberately independent of the histogram machinery, so it is only
    feasible for n <= 64 and m <= 4.
    """
    if n > 64 or m > 4 or m < 1 or n < 1:
        raise DomainError("enumeration limited to n <= 64, m <= 4")
    if not 0 <= t < n:
        raise DomainError(f"t={t} out of range for modulus {n}")
    domain = [x for x in range(n) if not units_only or gcd(x, n) == 1]
    total = 0
    for tup in product(domain, repeat=m):
        s = 0
        for x in tup:
            s += x * x
        if s % n == t:
            total += 1
    return total
