"""Public evaluation facade: factor the modulus, resolve each prime-power
component by a closed-form formula (or the oracle, per policy), and multiply
the componentwise counts back together through the CRT bijection.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import formulas, oracle
from .modarith import DomainError, Factorization, PrimePower, factorize


class Variant(str, Enum):
    ALL = "all"
    UNITS = "units"


class Policy(str, Enum):
    FORMULA_ONLY = "formula-only"
    ORACLE_FALLBACK = "oracle-fallback"
    ORACLE_ONLY = "oracle-only"


class FormulaNotCovered(Exception):
    """No closed form applies and the policy forbids the oracle."""


@dataclass(frozen=True)
class CountQuery:
    m: int
    t: int
    n: int
    variant: Variant = Variant.ALL
    policy: Policy = Policy.ORACLE_FALLBACK

    def __post_init__(self) -> None:
        if self.m < 1:
            raise DomainError(f"m must be >= 1, got {self.m}")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.t < self.n:
            raise DomainError(f"t={self.t} out of range for modulus {self.n}")


@dataclass(frozen=True)
class FactorPath:
    """Which route produced the count for one prime-power component."""

    p: int
    k: int
    label: str


@dataclass(frozen=True)
class CountResult:
    value: int
    path_taken: tuple[FactorPath, ...]


ORACLE_LABEL = "oracle"


def _dispatch_label(m: int, pp: PrimePower, variant: Variant) -> str | None:
    """Formula identifier for this component, or None if uncovered."""
    if variant is Variant.UNITS:
        return "units-pow2" if pp.p == 2 else None
    if pp.p == 2:
        if pp.k <= 2:
            return "binomial-pow2"
        if m == 1:
            return "sqrt-count-pow2"
        if m == 2:
            return "two-squares-pow2"
        if m == 3:
            return "three-squares-pow2"
        return None
    if pp.k == 1:
        return "odd-prime"
    if m == 1:
        return "sqrt-count"
    if m == 2:
        return "two-squares-odd"
    if m == 3:
        return "three-squares-odd"
    return None


def _formula_eval(label: str, m: int, t: int, pp: PrimePower) -> int:
    if label == "units-pow2":
        return formulas.nstar_m_2k(m, t, pp.k)
    if label == "binomial-pow2":
        return formulas.n_m_2(m, t) if pp.k == 1 else formulas.n_m_4(m, t)
    if label in ("sqrt-count-pow2", "sqrt-count"):
        return formulas.n_1_pk(t, pp)
    if label == "two-squares-pow2":
        return formulas.n_2_2k(t, pp.k)
    if label == "three-squares-pow2":
        return formulas.n_3_2k(t, pp.k)
    if label == "odd-prime":
        return formulas.n_m_p(m, t, pp.p)
    if label == "two-squares-odd":
        return formulas.n_2_pk(t, pp.p, pp.k)
    if label == "three-squares-odd":
        return formulas.n_3_pk(t, pp.p, pp.k)
    raise AssertionError(f"unknown formula label {label}")


def _component_count(
    m: int, t: int, pp: PrimePower, variant: Variant, policy: Policy
) -> tuple[int, str]:
    label = None if policy is Policy.ORACLE_ONLY else _dispatch_label(m, pp, variant)
    if label is not None:
        return _formula_eval(label, m, t, pp), label
    if policy is Policy.FORMULA_ONLY:
        raise FormulaNotCovered(
            f"no closed form for m={m}, p={pp.p}, k={pp.k}, variant={variant.value}"
        )
    value = oracle.oracle_count(m, t, pp.value, variant is Variant.UNITS)
    return value, ORACLE_LABEL


def count(q: CountQuery, factorization: Factorization | None = None) -> CountResult:
    """Exact count for the query, composed multiplicatively over prime powers.

    A precomputed factorization of q.n may be supplied to skip factoring.
    """
    f = factorization if factorization is not None else factorize(q.n)
    if f.n != q.n:
        raise DomainError(f"factorization is of {f.n}, not {q.n}")
    value = 1
    paths = []
    for pp in f.factors:
        comp, label = _component_count(q.m, q.t % pp.value, pp, q.variant, q.policy)
        value *= comp
        paths.append(FactorPath(pp.p, pp.k, label))
    return CountResult(value, tuple(paths))


def component_labels(
    m: int, n: int, variant: Variant = Variant.ALL, policy: Policy = Policy.ORACLE_FALLBACK
) -> tuple[FactorPath, ...]:
    """Per-factor route labels; independent of t for fixed (m, n, variant)."""
    paths = []
    for pp in factorize(n).factors:
        label = None if policy is Policy.ORACLE_ONLY else _dispatch_label(m, pp, variant)
        if label is None:
            if policy is Policy.FORMULA_ONLY:
                raise FormulaNotCovered(
                    f"no closed form for m={m}, p={pp.p}, k={pp.k}, variant={variant.value}"
                )
            label = ORACLE_LABEL
        paths.append(FactorPath(pp.p, pp.k, label))
    return tuple(paths)


def full_distribution(
    m: int,
    n: int,
    variant: Variant = Variant.ALL,
    policy: Policy = Policy.ORACLE_FALLBACK,
) -> oracle.Histogram:
    """counts[t] = count of representations of t, for every t in Z_n.

    Factors once and builds one per-residue table per prime power, so the
    formula path costs O(n * polylog n) overall.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    f = factorize(n)
    tables = []
    for pp in f.factors:
        label = None if policy is Policy.ORACLE_ONLY else _dispatch_label(m, pp, variant)
        if label is not None:
            table = [_formula_eval(label, m, t, pp) for t in range(pp.value)]
        elif policy is Policy.FORMULA_ONLY:
            raise FormulaNotCovered(
                f"no closed form for m={m}, p={pp.p}, k={pp.k}, variant={variant.value}"
            )
        else:
            if pp.value > oracle.MODULUS_GUARD:
                raise oracle.CapacityError(
                    f"component {pp.value} exceeds oracle guard {oracle.MODULUS_GUARD}"
                )
            h = oracle.convolve_power(
                oracle.square_histogram(pp.value, variant is Variant.UNITS), m
            )
            table = h.counts
        tables.append((pp.value, table))
    counts = []
    for t in range(n):
        v = 1
        for pv, table in tables:
            v *= table[t % pv]
        counts.append(v)
    return oracle.Histogram(n, counts)
