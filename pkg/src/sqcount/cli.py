"""Command-line front end: single evaluations, per-residue tables,
formula-vs-oracle verification sweeps, and micro-benchmarks.

Exit codes: 0 ok, 1 verification mismatch, 2 usage error, 3 formula
coverage gap under --policy formula-only, 4 oracle capacity exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time

import numpy as np

from . import _kernels, formulas, oracle
from .compose import (
    CountQuery,
    FormulaNotCovered,
    Policy,
    Variant,
    component_labels,
    count,
    full_distribution,
)
from .modarith import Factorization, PrimePower, factorize, is_prime
from .oracle import CapacityError

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_COVERAGE = 3
EXIT_CAPACITY = 4


def _add_common_eval_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--units", action="store_true", help="count unit-only tuples")
    p.add_argument(
        "--policy",
        choices=[pol.value for pol in Policy],
        default=Policy.ORACLE_FALLBACK.value,
        help="evaluation policy (default: oracle-fallback)",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqcount",
        description="Count representations of t as a sum of m squares mod n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a single count")
    p_eval.add_argument("-m", type=int, required=True, help="number of squares")
    p_eval.add_argument("-t", type=int, required=True, help="target residue")
    p_eval.add_argument("-n", type=int, required=True, help="modulus")
    _add_common_eval_args(p_eval)

    p_table = sub.add_parser("table", help="tabulate counts for all residues")
    p_table.add_argument("-m", type=int, required=True)
    p_table.add_argument("-n", type=int, required=True)
    p_table.add_argument("--units", action="store_true")
    p_table.add_argument(
        "--policy",
        choices=[pol.value for pol in Policy],
        default=Policy.ORACLE_FALLBACK.value,
    )
    p_table.add_argument("--format", choices=["csv", "json"], default="csv")

    p_verify = sub.add_parser("verify", help="formula-vs-oracle sweep")
    p_verify.add_argument(
        "--max-pp", type=int, default=512, help="largest odd prime power (default 512)"
    )
    p_verify.add_argument(
        "--max-k2", type=int, default=8, help="largest exponent for 2^k (default 8)"
    )
    p_verify.add_argument(
        "--m-list", default="1,2,3", help="comma-separated m values (default 1,2,3)"
    )
    p_verify.add_argument("--seed", type=int, default=0)

    p_bench = sub.add_parser("bench", help="micro-benchmarks")
    p_bench.add_argument(
        "--sizes",
        default="256,1024,4096",
        help="comma-separated oracle moduli (default 256,1024,4096)",
    )
    return parser


def _cmd_eval(args: argparse.Namespace) -> int:
    if not 0 <= args.t < args.n or args.m < 1 or args.n < 1:
        print(f"invalid query: m={args.m}, t={args.t}, n={args.n}", file=sys.stderr)
        return EXIT_USAGE
    q = CountQuery(
        args.m,
        args.t,
        args.n,
        Variant.UNITS if args.units else Variant.ALL,
        Policy(args.policy),
    )
    result = count(q)
    if args.json:
        payload = {
            "m": args.m,
            "t": args.t,
            "n": args.n,
            "variant": q.variant.value,
            "policy": q.policy.value,
            "value": str(result.value),
            "paths": [
                {"p": fp.p, "k": fp.k, "path": fp.label} for fp in result.path_taken
            ],
        }
        print(json.dumps(payload))
    else:
        print(f"value {result.value}")
        for fp in result.path_taken:
            print(f"  {fp.p}^{fp.k} -> {fp.label}")
    return EXIT_OK


def _path_string(m: int, n: int, variant: Variant, policy: Policy) -> str:
    if n == 1:
        return "trivial"
    return "+".join(fp.label for fp in component_labels(m, n, variant, policy))


def _cmd_table(args: argparse.Namespace) -> int:
    if args.m < 1 or args.n < 1:
        print(f"invalid query: m={args.m}, n={args.n}", file=sys.stderr)
        return EXIT_USAGE
    variant = Variant.UNITS if args.units else Variant.ALL
    policy = Policy(args.policy)
    hist = full_distribution(args.m, args.n, variant, policy)
    path = _path_string(args.m, args.n, variant, policy)
    if args.format == "csv":
        print("t,value,path")
        for t, v in enumerate(hist.counts):
            print(f"{t},{v},{path}")
    else:
        rows = [
            {"t": t, "value": str(v), "path": path}
            for t, v in enumerate(hist.counts)
        ]
        print(json.dumps(rows))
    return EXIT_OK


def _odd_prime_powers(limit: int):
    for p in range(3, limit + 1, 2):
        if not is_prime(p):
            continue
        k = 1
        while p**k <= limit:
            yield p, k
            k += 1


def _verify_sweep(max_pp: int, max_k2: int, m_list: list[int], seed: int):
    """Run every formula family against the oracle; returns (passes, fails)."""
    passes: dict[str, int] = {}
    fails: dict[str, int] = {}
    failures: list[tuple[int, int, int, int, str]] = []  # (m, t, p, k, family)

    def check(family: str, expected: int, got: int, m: int, t: int, p: int, k: int):
        if expected == got:
            passes[family] = passes.get(family, 0) + 1
        else:
            fails[family] = fails.get(family, 0) + 1
            failures.append((m, t, p, k, family))

    # powers of two
    for k in range(1, max_k2 + 1):
        n = 1 << k
        all_tables = {
            m: oracle.convolve_power(oracle.square_histogram(n), m).counts
            for m in set(m_list) | {1, 2, 3}
        }
        unit_tables = {
            m: oracle.convolve_power(oracle.square_histogram(n, True), m).counts
            for m in m_list
        }
        for t in range(n):
            if k <= 2:
                for m in m_list:
                    got = formulas.n_m_2(m, t) if k == 1 else formulas.n_m_4(m, t)
                    check("binomial-pow2", all_tables[m][t], got, m, t, 2, k)
            if k >= 2:
                check("two-squares-pow2", all_tables[2][t], formulas.n_2_2k(t, k), 2, t, 2, k)
            check("three-squares-pow2", all_tables[3][t], formulas.n_3_2k(t, k), 3, t, 2, k)
            check(
                "sqrt-count-pow2",
                all_tables[1][t],
                formulas.n_1_pk(t, PrimePower(2, k)),
                1,
                t,
                2,
                k,
            )
            for m in m_list:
                check("units-pow2", unit_tables[m][t], formulas.nstar_m_2k(m, t, k), m, t, 2, k)

    # odd prime powers
    for p, k in _odd_prime_powers(max_pp):
        n = p**k
        tables = {
            m: oracle.convolve_power(oracle.square_histogram(n), m).counts
            for m in ({1, 2, 3} if k > 1 else set(m_list) | {1, 2, 3})
        }
        for t in range(n):
            if k == 1:
                for m in m_list:
                    check("odd-prime", tables[m][t], formulas.n_m_p(m, t, p), m, t, p, k)
            check("sqrt-count", tables[1][t], formulas.n_1_pk(t, PrimePower(p, k)), 1, t, p, k)
            check("two-squares-odd", tables[2][t], formulas.n_2_pk(t, p, k), 2, t, p, k)
            check("three-squares-odd", tables[3][t], formulas.n_3_pk(t, p, k), 3, t, p, k)

    # CRT composition on random composites
    rng = random.Random(seed)
    for _ in range(20):
        n = rng.randint(2, min(max_pp, 1024))
        m = rng.choice([mm for mm in m_list if mm <= 3] or [2])
        dist = full_distribution(m, n)
        table = oracle.convolve_power(oracle.square_histogram(n), m).counts
        for t in range(n):
            check("crt-composition", table[t], dist.counts[t], m, t, n, 1)

    return passes, fails, failures


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        m_list = sorted({int(x) for x in args.m_list.split(",") if x.strip()})
    except ValueError:
        print(f"bad --m-list: {args.m_list}", file=sys.stderr)
        return EXIT_USAGE
    if not m_list or min(m_list) < 1 or args.max_pp < 3 or args.max_k2 < 1:
        print("bounds out of range", file=sys.stderr)
        return EXIT_USAGE
    passes, fails, failures = _verify_sweep(args.max_pp, args.max_k2, m_list, args.seed)
    for family in sorted(set(passes) | set(fails)):
        print(f"{family}: pass={passes.get(family, 0)} fail={fails.get(family, 0)}")
    if failures:
        m, t, p, k, family = min(failures, key=lambda r: (r[2] ** r[3], r[0], r[1]))
        print(f"FAIL {family}: minimal mismatch at m={m}, t={t}, p={p}, k={k}")
        return EXIT_MISMATCH
    print("all formula families match the oracle")
    return EXIT_OK


def _composite_near(target: int) -> Factorization:
    """A squarefree-ish composite just below target with known factorization."""
    exps = [(2, 4), (3, 3), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1)]
    prod = 1
    for p, k in exps:
        prod *= p**k
    q = target // prod
    if q >= 23:
        if q % 2 == 0:
            q -= 1
        while not is_prime(q) or any(q == p for p, _ in exps):
            q -= 2
        exps.append((q, 1))
        prod *= q
    factors = tuple(PrimePower(p, k) for p, k in sorted(exps))
    return Factorization(prod, factors)


def _time_per_call(fn, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    except ValueError:
        print(f"bad --sizes: {args.sizes}", file=sys.stderr)
        return EXIT_USAGE
    if not sizes or min(sizes) < 1:
        print("--sizes entries must be >= 1", file=sys.stderr)
        return EXIT_USAGE

    rng = random.Random(1)
    print("formula path (known factorization):")
    for label, target in (("~2^32", 1 << 32), ("~2^63", 1 << 63)):
        f = _composite_near(target)
        ts = [rng.randrange(f.n) for _ in range(64)]
        it = iter(ts * 100)
        per = _time_per_call(
            lambda: count(CountQuery(3, next(it), f.n), factorization=f), 200
        )
        print(f"  n {label} ({f.n}): {per * 1e6:.1f} us/query")

    print("oracle path (m=3 convolution):")
    for n in sizes:
        t0 = time.perf_counter()
        oracle.convolve_power(oracle.square_histogram(n), 3)
        dt = time.perf_counter() - t0
        print(f"  n={n}: {dt * 1e3:.1f} ms")

    n = max(sizes)
    h = oracle.square_histogram(n)
    arr = np.array(h.counts, dtype=np.int64)
    print(f"convolution kernel backends (n={n}):")
    t_np = _time_per_call(lambda: _kernels.cyclic_convolve_numpy(arr, arr), 5)
    print(f"  numpy: {t_np * 1e3:.1f} ms")
    if _kernels.NUMBA_ENABLED:
        _kernels.cyclic_convolve_numba(arr, arr)  # warm up compile
        t_nb = _time_per_call(lambda: _kernels.cyclic_convolve_numba(arr, arr), 5)
        print(f"  numba: {t_nb * 1e3:.1f} ms")
    else:
        print("  numba: disabled (SQCOUNT_NO_NUMBA or import failure)")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "table":
            return _cmd_table(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_bench(args)
    except FormulaNotCovered as exc:
        print(f"formula coverage gap: {exc}", file=sys.stderr)
        return EXIT_COVERAGE
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


def entrypoint() -> None:  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entrypoint()
