"""Closed-form counts of sums of squares for a single prime-power modulus.

Each function returns the exact number of m-tuples (x_1..x_m) over Z_{p^k}
(or over its units) whose squares sum to t. Branch selection always goes
through the p-adic decomposition of t plus the Legendre symbol of its unit
part; no branch inspects raw t.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .modarith import (
    DomainError,
    PrimePower,
    is_prime,
    legendre,
    padic_decompose,
    sqrt_mod_pk,
)


@dataclass(frozen=True)
class GammaVector:
    """The triple (count at 0, count at a nonresidue, count at a residue)
    that fully describes the m-squares count over Z_p."""

    at_zero: int
    at_nonresidue: int
    at_residue: int


def _check_residue(t: int, n: int) -> None:
    if not 0 <= t < n:
        raise DomainError(f"t={t} out of range for modulus {n}")


def _check_m(m: int) -> None:
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")


def nstar_m_2k(m: int, t: int, k: int) -> int:
    """Count of unit-only representations of t as m squares mod 2^k."""
    _check_m(m)
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    _check_residue(t, 1 << k)
    if k == 1:
        return 1 if t % 2 == m % 2 else 0
    if k == 2:
        return 2**m if t % 4 == m % 4 else 0
    if t % 8 == m % 8:
        return 2 ** (2 * m + (m - 1) * (k - 3))
    return 0


def ramus_sum(m: int, t: int, step: int) -> int:
    """Sum of C(m, t + step*j) over all j with the index in range."""
    return sum(comb(m, i) for i in range(t, m + 1, step))


def n_m_2(m: int, t: int) -> int:
    """Count of representations of t as m squares mod 2, as a binomial sum."""
    _check_m(m)
    _check_residue(t, 2)
    return ramus_sum(m, t, 2)


def n_m_4(m: int, t: int) -> int:
    """Count of representations of t as m squares mod 4."""
    _check_m(m)
    _check_residue(t, 4)
    return 2**m * ramus_sum(m, t, 4)


def n_2_2k(t: int, k: int) -> int:
    """Count of representations of t as two squares mod 2^k, k >= 2."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    d = padic_decompose(t, PrimePower(2, k))
    if d.is_zero:
        return 1 << k
    assert d.alpha is not None and d.beta is not None
    if d.alpha == k - 1:
        return 1 << k
    if d.beta % 4 == 1:
        return 1 << (k + 1)
    return 0


def n_3_2k(t: int, k: int) -> int:
    """Count of representations of t as three squares mod 2^k.

    The closed form requires k >= 3; k in {1, 2} reduces to the binomial
    sums for moduli 2 and 4.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if k == 1:
        return n_m_2(3, t)
    if k == 2:
        return n_m_4(3, t)
    d = padic_decompose(t, PrimePower(2, k))
    if d.is_zero:
        return 1 << (3 * k // 2 if k % 2 == 0 else (3 * k + 1) // 2)
    assert d.alpha is not None and d.beta is not None
    a, b = d.alpha, d.beta
    depth = k - a
    if depth > 2:
        if a % 2 == 0:
            if b % 4 == 1:
                return 3 << (2 * k - a // 2 - 1)
            if b % 8 == 3:
                return 1 << (2 * k - a // 2)
            return 0
        return 3 << (2 * k - (a + 1) // 2)
    if depth == 2:
        if a % 2 == 0:
            if b % 4 == 1:
                return 3 << (3 * k // 2)
            return 1 << (3 * k // 2)
        return 3 << ((3 * k + 1) // 2)
    # depth == 1
    if a % 2 == 0:
        return 1 << ((3 * k + 1) // 2)
    return 3 << (3 * k // 2)


def n_m_p(m: int, t: int, p: int) -> int:
    """Count of representations of t as m squares mod an odd prime p."""
    _check_m(m)
    _check_residue(t, p)
    ell = legendre(t, p)
    if m % 2 == 1:
        j = (m - 1) // 2
        if ell == 0:
            return p ** (2 * j)
        if p % 4 == 1:
            return p ** (2 * j) + ell * p**j
        sign = 1 if j % 2 == 0 else -1
        return p ** (2 * j) + ell * sign * p**j
    j = m // 2
    sign = 1 if j % 2 == 0 else -1
    if ell == 0:
        if p % 4 == 1:
            return p ** (2 * j - 1) + p**j - p ** (j - 1)
        return p ** (2 * j - 1) + sign * p**j - sign * p ** (j - 1)
    if p % 4 == 1:
        return p ** (2 * j - 1) - p ** (j - 1)
    return p ** (2 * j - 1) - sign * p ** (j - 1)


def gamma_closed(m: int, p: int) -> GammaVector:
    """Gamma triple for Z_p straight from the closed forms."""
    _check_m(m)
    nr = _least_nonresidue(p)
    return GammaVector(n_m_p(m, 0, p), n_m_p(m, nr, p), n_m_p(m, 1, p))


def _least_nonresidue(p: int) -> int:
    a = 2
    while legendre(a, p) != -1:
        a += 1
    return a


def _doubled_recurrence_matrix(p: int) -> list[list[int]]:
    """Twice the one-step gamma recurrence matrix (entries are half-integers,
    so the doubled matrix is the integer object we exponentiate)."""
    if p % 4 == 1:
        return [
            [2, 0, 2 * (p - 1)],
            [0, p + 1, p - 1],
            [4, p - 1, p - 3],
        ]
    return [
        [2, 2 * (p - 1), 0],
        [0, p - 1, p + 1],
        [4, p - 3, p - 1],
    ]


def _mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    return [
        [sum(a[i][x] * b[x][j] for x in range(3)) for j in range(3)]
        for i in range(3)
    ]


def _mat_pow(m: list[list[int]], e: int) -> list[list[int]]:
    result = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    base = m
    while e:
        if e & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        e >>= 1
    return result


def gamma_recurrence(m: int, p: int) -> GammaVector:
    """Gamma triple via exact exponentiation of the recurrence matrix.

    Computes (2M)^(m-1) * gamma_1 and divides by 2^(m-1); inexact division
    would signal a bug in the matrix, never an expected condition.
    """
    _check_m(m)
    if p == 2 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    mat = _mat_pow(_doubled_recurrence_matrix(p), m - 1)
    vec = [mat[i][0] * 1 + mat[i][2] * 2 for i in range(3)]
    denom = 1 << (m - 1)
    out = []
    for v in vec:
        if v % denom:
            raise AssertionError(f"inexact gamma division: {v} / {denom}")
        out.append(v // denom)
    return GammaVector(*out)


def n_2_pk(t: int, p: int, k: int) -> int:
    """Count of representations of t as two squares mod p^k, p odd."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    d = padic_decompose(t, PrimePower(p, k))
    if p % 4 == 1:
        if d.is_zero:
            return p ** (k - 1) * (p * (k + 1) - k)
        assert d.alpha is not None
        return (d.alpha + 1) * (p - 1) * p ** (k - 1)
    if d.is_zero:
        return p ** (2 * (k // 2))
    assert d.alpha is not None
    if d.alpha % 2 == 0:
        return (p + 1) * p ** (k - 1)
    return 0


def n_3_pk(t: int, p: int, k: int) -> int:
    """Count of representations of t as three squares mod p^k, p odd.

    The residue/nonresidue roles of the alpha-even branches swap with
    p mod 4.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    d = padic_decompose(t, PrimePower(p, k))
    if d.is_zero:
        return p ** (2 * k) + p ** (2 * k - 1) - p ** (-(-3 * k // 2) - 1)
    assert d.alpha is not None and d.beta is not None
    a = d.alpha
    if a % 2 == 1:
        return (p ** (2 * k - 1) - p ** (2 * k - (a + 3) // 2)) * (p + 1)
    ell = legendre(d.beta, p)
    plain = p ** (2 * k - 1) * (p + 1)
    deficit = plain - 2 * p ** (2 * k - 1 - a // 2)
    if p % 4 == 1:
        return plain if ell == 1 else deficit
    return deficit if ell == 1 else plain


def n_1_pk(t: int, pp: PrimePower) -> int:
    """Number of square roots of t mod p^k.

    Odd p has a direct closed form; p = 2 counts the root set itself.
    """
    if pp.p == 2:
        return len(sqrt_mod_pk(t, pp))
    d = padic_decompose(t % pp.value, pp)
    if d.is_zero:
        return pp.p ** (pp.k // 2)
    assert d.alpha is not None and d.beta is not None
    if d.alpha % 2 == 0 and legendre(d.beta, pp.p) == 1:
        return 2 * pp.p ** (d.alpha // 2)
    return 0
