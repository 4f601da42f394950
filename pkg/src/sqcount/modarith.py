"""Modular-arithmetic primitives: Legendre symbol, p-adic decomposition,
modular square roots, factorization and CRT splitting.

Everything here works on plain Python integers, so counts and moduli are
exact at any size. All functions are pure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt


class DomainError(ValueError):
    """An argument is outside the documented domain of an operation."""


# Deterministic Miller-Rabin witness sets, keyed by the largest n they cover.
# The final set is valid for all n < 3.3 * 10^24.
_MR_RANGES = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (9080191, (31, 73)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (4759123141, (2, 7, 61)),
    (1122004669633, (2, 13, 23, 1662803)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318665857834031151167461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3317044064679887385961981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)

_PRIMALITY_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin test, valid for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= _PRIMALITY_LIMIT:
        raise DomainError(f"primality test not deterministic for n >= {_PRIMALITY_LIMIT}")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    witnesses: tuple[int, ...] = ()
    for bound, ws in _MR_RANGES:
        if n < bound:
            witnesses = ws
            break
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimePower:
    """A prime p raised to an exponent k >= 1, the atomic modulus."""

    p: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise DomainError(f"exponent must be >= 1, got {self.k}")
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")

    @property
    def value(self) -> int:
        return self.p**self.k


@dataclass(frozen=True)
class Factorization:
    """Complete factorization of n into strictly increasing prime powers."""

    n: int
    factors: tuple[PrimePower, ...]

    def __post_init__(self) -> None:
        prod = 1
        prev = 0
        for pp in self.factors:
            if pp.p <= prev:
                raise DomainError("prime factors must be strictly increasing")
            prev = pp.p
            prod *= pp.value
        if prod != self.n:
            raise DomainError(f"factors multiply to {prod}, not {self.n}")


@dataclass(frozen=True)
class PadicDecomposition:
    """t = p^alpha * beta with p not dividing beta, or the distinct t = 0 state.

    Zero is represented explicitly (alpha is None) rather than as alpha = k,
    because every counting formula branches on t = 0 separately.
    """

    alpha: int | None = None
    beta: int | None = None

    @property
    def is_zero(self) -> bool:
        return self.alpha is None


PADIC_ZERO = PadicDecomposition()


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) via Euler's criterion. Requires p an odd prime."""
    if p == 2 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    e = pow(a, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def padic_decompose(t: int, pp: PrimePower) -> PadicDecomposition:
    """Split a residue t in Z_{p^k} into p^alpha * beta with p not dividing beta."""
    n = pp.value
    if not 0 <= t < n:
        raise DomainError(f"t={t} out of range for modulus {n}")
    if t == 0:
        return PADIC_ZERO
    alpha = 0
    while t % pp.p == 0:
        t //= pp.p
        alpha += 1
    return PadicDecomposition(alpha, t % pp.p ** (pp.k - alpha))


def _tonelli_shanks(a: int, p: int) -> int:
    """One square root of a mod odd prime p; a must be a nonzero residue."""
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    b = pow(a, q, p)
    m = s
    while b != 1:
        t2 = b
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        g = pow(c, 1 << (m - i - 1), p)
        x = x * g % p
        c = g * g % p
        b = b * c % p
        m = i
    return x


def _hensel_lift_odd(r: int, a: int, p: int, k: int) -> int:
    """Lift a root r of x^2 = a mod p to a root mod p^k (p odd)."""
    mod = p
    while mod < p**k:
        mod = min(mod * mod, p**k)
        inv = pow(2 * r, -1, mod)
        r = (r - (r * r - a) * inv) % mod
    return r


def _lift_odd_unit_2adic(a: int, kappa: int) -> int:
    """A root of x^2 = a mod 2^kappa for odd a = 1 mod 8, kappa >= 3.

    Constructive lift: whenever r^2 misses a mod the next power of two,
    adding 2^(j-1) to r fixes the offending bit.
    """
    r = 1
    for j in range(3, kappa):
        if (r * r - a) % (1 << (j + 1)):
            r += 1 << (j - 1)
    return r % (1 << kappa)


def _unit_sqrts(beta: int, p: int, kappa: int) -> list[int]:
    """All roots of x^2 = beta mod p^kappa where p does not divide beta."""
    if p == 2:
        if kappa == 1:
            return [1]
        if kappa == 2:
            return [1, 3] if beta % 4 == 1 else []
        if beta % 8 != 1:
            return []
        m = 1 << kappa
        r = _lift_odd_unit_2adic(beta, kappa)
        return sorted({r, m - r, (m // 2 - r) % m, (m // 2 + r) % m})
    if legendre(beta, p) != 1:
        return []
    r = _tonelli_shanks(beta % p, p)
    r = _hensel_lift_odd(r, beta, p, kappa)
    m = p**kappa
    return sorted({r, m - r})


def sqrt_mod_pk(t: int, pp: PrimePower) -> set[int]:
    """The complete set of x in Z_{p^k} with x^2 = t mod p^k."""
    n = pp.value
    t %= n
    d = padic_decompose(t, pp)
    if d.is_zero:
        step = pp.p ** ((pp.k + 1) // 2)
        return {s * step for s in range(pp.p ** (pp.k // 2))}
    assert d.alpha is not None and d.beta is not None
    if d.alpha % 2 != 0:
        return set()
    half = d.alpha // 2
    kappa = pp.k - d.alpha
    units = _unit_sqrts(d.beta, pp.p, kappa)
    scale = pp.p**half
    period = pp.p**kappa
    roots: set[int] = set()
    for y in units:
        for s in range(scale):
            roots.add(scale * (y + s * period) % n)
    return roots


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)

_DEFAULT_FACTOR_BOUND = 1 << 63


def _pollard_rho(n: int) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite n."""
    for c in range(1, 1000):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            j = 0
            while j < r and g == 1:
                ys = y
                for _ in range(min(m, r - j)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                j += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"pollard rho failed on {n}")  # pragma: no cover


def factorize(n: int, bound: int = _DEFAULT_FACTOR_BOUND) -> Factorization:
    """Complete prime factorization of n.

    Trial division handles the small-prime part (sufficient alone below
    10^12); any remaining cofactor goes through deterministic Miller-Rabin
    plus Pollard rho.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n > bound:
        raise DomainError(f"n={n} exceeds configured bound {bound}")
    orig = n
    exps: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            exps[p] = exps.get(p, 0) + 1
            n //= p
    d = 37
    limit = min(isqrt(n), 10**6)
    while d <= limit:
        while n % d == 0:
            exps[d] = exps.get(d, 0) + 1
            n //= d
            limit = min(isqrt(n), 10**6)
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        q = stack.pop()
        if q == 1:
            continue
        if is_prime(q):
            exps[q] = exps.get(q, 0) + 1
            continue
        g = _pollard_rho(q)
        stack.append(g)
        stack.append(q // g)
    factors = tuple(PrimePower(p, k) for p, k in sorted(exps.items()))
    return Factorization(orig, factors)


def crt_split(t: int, f: Factorization) -> list[int]:
    """Reduce t in Z_n componentwise mod each prime power of f."""
    if not 0 <= t < max(f.n, 1):
        raise DomainError(f"t={t} out of range for modulus {f.n}")
    return [t % pp.value for pp in f.factors]
