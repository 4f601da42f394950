"""Acceptance suite: every criterion runs at its stated bound and tolerance
(all tolerances are zero; counts are exact integers) and prints one
pass/fail line. Run with `pytest tests/test_acceptance.py -v -s`.
"""
import random
import statistics
import time

from sqcount import formulas
from sqcount.compose import CountQuery, Policy, Variant, count, full_distribution
from sqcount.formulas import (
    gamma_closed,
    gamma_recurrence,
    n_1_pk,
    n_2_2k,
    n_2_pk,
    n_3_2k,
    n_3_pk,
    n_m_2,
    n_m_4,
    n_m_p,
    nstar_m_2k,
)
from sqcount.modarith import Factorization, PrimePower, is_prime, legendre
from sqcount.oracle import convolve_power, square_histogram


def _report(criterion, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"{tag} criterion {criterion}: {detail}")
    assert ok, f"criterion {criterion} failed: {detail}"


def _oracle_tables(n, ms, units_only=False):
    h = square_histogram(n, units_only)
    return {m: convolve_power(h, m).counts for m in ms}


def odd_primes_up_to(limit):
    return [p for p in range(3, limit + 1, 2) if is_prime(p)]


def test_criterion_1_power_of_two_exactness():
    checked = 0
    for k in range(1, 13):
        n = 1 << k
        tables = _oracle_tables(n, (2, 3))
        units = _oracle_tables(n, range(1, 9), units_only=True)
        for t in range(n):
            if k >= 2:
                assert n_2_2k(t, k) == tables[2][t], (t, k)
            assert n_3_2k(t, k) == tables[3][t], (t, k)
            for m in range(1, 9):
                assert nstar_m_2k(m, t, k) == units[m][t], (m, t, k)
            checked += 10
    for m in range(1, 11):
        t2 = _oracle_tables(2, (m,))[m]
        t4 = _oracle_tables(4, (m,))[m]
        for t in range(2):
            assert n_m_2(m, t) == t2[t]
        for t in range(4):
            assert n_m_4(m, t) == t4[t]
        checked += 6
    _report(1, True, f"p=2 formulas exact for k <= 12 ({checked} comparisons)")


def test_criterion_2_odd_prime_exactness():
    checked = 0
    for p in odd_primes_up_to(3000):
        k = 1
        while p**k <= 3000:
            n = p**k
            tables = _oracle_tables(n, (1, 2, 3))
            pp = PrimePower(p, k)
            for t in range(n):
                assert n_1_pk(t, pp) == tables[1][t], (1, t, p, k)
                assert n_2_pk(t, p, k) == tables[2][t], (2, t, p, k)
                assert n_3_pk(t, p, k) == tables[3][t], (3, t, p, k)
            checked += 3 * n
            k += 1
    for p in odd_primes_up_to(97):
        tables = _oracle_tables(p, range(1, 11))
        for m in range(1, 11):
            for t in range(p):
                assert n_m_p(m, t, p) == tables[m][t], (m, t, p)
        checked += 10 * p
    _report(2, True, f"odd-prime formulas exact ({checked} comparisons)")


def test_criterion_3_spot_values():
    assert gamma_closed(1, 13) == formulas.GammaVector(1, 0, 2)
    assert gamma_closed(1, 19) == formulas.GammaVector(1, 0, 2)
    for p in (5, 13, 17):
        assert gamma_closed(2, p) == formulas.GammaVector(2 * p - 1, p - 1, p - 1)
    for p in (3, 7, 11):
        assert gamma_closed(2, p) == formulas.GammaVector(1, p + 1, p + 1)
    assert n_2_pk(0, 5, 2) == 65
    assert n_3_2k(0, 3) == 32
    assert n_3_pk(0, 3, 2) == 99
    _report(3, True, "published spot values reproduce exactly")


def test_criterion_4_recurrence_equivalence():
    t0 = time.perf_counter()
    for p in odd_primes_up_to(97):
        for m in range(1, 31):
            assert gamma_recurrence(m, p) == gamma_closed(m, p), (m, p)
    dt = time.perf_counter() - t0
    _report(4, dt < 10, f"recurrence = closed form for m <= 30, p <= 97 ({dt:.2f}s)")


def test_criterion_5_mass_identities():
    rng = random.Random(2024)
    for _ in range(100):
        m = rng.randint(1, 5)
        n = rng.randint(1, 512)
        assert sum(full_distribution(m, n).counts) == n**m, (m, n)
    for k in range(1, 11):
        for m in range(1, 7):
            total = sum(nstar_m_2k(m, t, k) for t in range(1 << k))
            assert total == 2 ** ((k - 1) * m), (m, k)
    _report(5, True, "total and unit mass identities exact")


def test_criterion_6_crt_multiplicativity():
    rng = random.Random(99)
    done = 0
    while done < 50:
        n = rng.randint(6, 1024)
        if is_prime(n):
            continue
        m = rng.choice([2, 3])
        table = convolve_power(square_histogram(n), m).counts
        dist = full_distribution(m, n)
        assert dist.counts == table, (m, n)
        done += 1
    _report(6, True, "composed counts equal the oracle on 50 random composites")


def test_criterion_7_lemma_properties():
    primes = odd_primes_up_to(200)
    for p in primes:
        squares = {x * x % p for x in range(1, p)}
        leg = [0 if a == 0 else (1 if a in squares else -1) for a in range(p)]
        # difference of two squares hits every nonzero t exactly p-1 times
        hist = [0] * p
        for x in range(p):
            for y in range(p):
                hist[(y * y - x * x) % p] += 1
        assert all(hist[t] == p - 1 for t in range(1, p))
        # shifted-square character sum
        for t in range(1, p):
            assert sum(leg[(x * x + t) % p] for x in range(p)) == -1
        # z-counts of legendre(t - z^2) split by p mod 4 and legendre(t)
        for t in range(1, p):
            minus = sum(1 for z in range(p) if leg[(t - z * z) % p] == -1)
            plus = sum(1 for z in range(p) if leg[(t - z * z) % p] == 1)
            if leg[t] == -1:
                expect = (
                    ((p + 1) // 2, (p - 1) // 2)
                    if p % 4 == 1
                    else ((p - 1) // 2, (p + 1) // 2)
                )
            else:
                expect = (
                    ((p - 1) // 2, (p - 3) // 2)
                    if p % 4 == 1
                    else ((p - 3) // 2, (p - 1) // 2)
                )
            assert (minus, plus) == expect, (p, t)
    # descent by a factor of 4 in t and modulus
    for k in range(5, 11):
        for tp in range(1 << (k - 2)):
            assert n_2_2k(4 * tp, k) == 4 * n_2_2k(tp, k - 2)
            assert n_3_2k(4 * tp, k) == 8 * n_3_2k(tp, k - 2)
    # unit-square scaling invariance
    for p, k in ((3, 4), (5, 3), (7, 2), (13, 2), (101, 1)):
        n = p**k
        units = [u for u in range(1, min(n, 40)) if u % p != 0]
        for t in range(n):
            r2, r3 = n_2_pk(t, p, k), n_3_pk(t, p, k)
            for u in units:
                s = u * u * t % n
                assert n_2_pk(s, p, k) == r2
                assert n_3_pk(s, p, k) == r3
    for k in range(3, 11):
        n = 1 << k
        for t in range(n):
            r2, r3 = n_2_2k(t, k), n_3_2k(t, k)
            for u in (3, 5, 9, 15):
                s = u * u * t % n
                assert n_2_2k(s, k) == r2
                assert n_3_2k(s, k) == r3
    _report(7, True, "enumerated lemma-level properties hold for p <= 200, 2^k <= 2^10")


def _factorization_near_2_63():
    exps = [(2, 4), (3, 3), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1)]
    prod = 1
    for p, k in exps:
        prod *= p**k
    q = (1 << 63) // prod
    if q % 2 == 0:
        q -= 1
    while not is_prime(q):
        q -= 2
    exps.append((q, 1))
    prod *= q
    return Factorization(prod, tuple(PrimePower(p, k) for p, k in sorted(exps)))


def test_criterion_8_performance():
    f = _factorization_near_2_63()
    assert f.n > (1 << 62)
    rng = random.Random(5)
    ts = [rng.randrange(f.n) for _ in range(50)]
    # warm-up
    count(CountQuery(3, ts[0], f.n), factorization=f)
    samples = []
    for t in ts:
        t0 = time.perf_counter()
        count(CountQuery(3, t, f.n), factorization=f)
        samples.append(time.perf_counter() - t0)
    formula_ms = statistics.median(samples) * 1e3

    t0 = time.perf_counter()
    convolve_power(square_histogram(4096), 3)
    oracle_s = time.perf_counter() - t0
    ok = formula_ms < 1.0 and oracle_s < 30.0
    _report(
        8,
        ok,
        f"formula path {formula_ms:.3f} ms/query at n~2^63; "
        f"oracle n=4096 m=3 in {oracle_s:.2f}s",
    )
