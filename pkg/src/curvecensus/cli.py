"""Command-line front end: censuses, sweeps, oracle verification, averages.

Exit codes: 0 success, 1 usage, 2 verification mismatch, 3 resource limits.
All output is deterministic: fixed sort orders and fixed rounding.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from collections import Counter
from pathlib import Path

from .arith import as_prime_power, prime_powers_up_to
from .census import (
    bounds_F,
    census,
    isogeny_class_size,
    sum_F_upto,
    sweep,
    theta_constant,
)
from .classnum import ClassNumberTable, build_table
from .oracle import DEFAULT_ORACLE_CAP, make_field, oracle_census

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_RESOURCE = 3

SWEEP_HEADER = "p,G,I,ratio_num,ratio_den,t_max,same_t,m_at_max,scaled"
SWEEP_COMMENT = "# scaled = G / (sqrt(p) * log p) with the natural logarithm"

_CACHE_THRESHOLD = 100_000  # build tables smaller than this in memory only


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class UsageError(Exception):
    pass


def get_table(X: int, cache_dir: str | os.PathLike) -> ClassNumberTable:
    """Class-number table covering |D| <= X, reusing any adequate cache file."""
    if X < _CACHE_THRESHOLD:
        return build_table(max(X, 3))
    cache = Path(cache_dir)
    best: Path | None = None
    best_limit = 0
    if cache.is_dir():
        for f in cache.glob("cnt_*.bin"):
            try:
                limit = int(f.stem.split("_")[1])
            except (IndexError, ValueError):
                continue
            if limit >= X and (best is None or limit < best_limit):
                best, best_limit = f, limit
    if best is not None:
        return ClassNumberTable.load(best)
    table = build_table(X)
    cache.mkdir(parents=True, exist_ok=True)
    table.save(cache / f"cnt_{X}.bin")
    return table


def _parse_prime_power(raw: int):
    q = as_prime_power(raw)
    if q is None:
        raise UsageError(f"{raw} is not a prime power")
    if raw > 1 << 40:
        raise UsageError(f"q = {raw} exceeds the supported bound 2^40")
    return q


def cmd_census(args) -> int:
    q = _parse_prime_power(args.q)
    table = get_table(4 * q.q, args.cache_dir)
    tab = census(q, table)
    lower, upper = bounds_F(q)
    if args.format == "json":
        doc = {
            "q": q.q,
            "p": q.p,
            "k": q.k,
            "F": tab.F,
            "G_max": tab.G_max,
            "t_max": tab.T_max,
            "entries": [
                {"m": e.structure.m, "n": e.structure.n, "t": e.t, "count": e.count}
                for e in tab.entries
            ],
            "bounds": {"lower": round(lower, 6), "upper": round(upper, 6)},
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        lines = ["m,n,t,count"]
        lines += [
            f"{e.structure.m},{e.structure.n},{e.t},{e.count}" for e in tab.entries
        ]
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.q_max > args.oracle_cap:
        raise UsageError(f"q_max {args.q_max} exceeds the oracle cap {args.oracle_cap}")
    if args.q_max < 2:
        raise UsageError("q_max must be at least 2")
    table = get_table(4 * args.q_max, args.cache_dir)
    mismatches = 0
    for q in prime_powers_up_to(args.q_max):
        if q.p < 5:
            print(f"q={q.q}: skipped (p={q.p} < 5, no short-Weierstrass oracle)")
            continue
        ctx = make_field(q.p, q.k, cap=args.oracle_cap)
        oc = oracle_census(ctx)
        formulas = census(q, table)
        want = formulas.structure_counts()
        ok = oc.by_structure == want and oc.distinct_structures == formulas.F
        lo = q.q + 1 - math.isqrt(4 * q.q)
        hi = q.q + 1 + math.isqrt(4 * q.q)
        for N in range(lo, hi + 1):
            if oc.by_order.get(N, 0) != isogeny_class_size(q, N, table):
                ok = False
        if ok:
            print(f"q={q.q}: OK ({formulas.F} structures, {oc.n_classes} classes)")
            continue
        mismatches += 1
        print(f"q={q.q}: MISMATCH")
        for key in sorted(set(want) | set(oc.by_structure)):
            w, o = want.get(key, 0), oc.by_structure.get(key, 0)
            if w != o:
                print(f"  (m,n)={key}: formula {w}, oracle {o}")
        for N in range(lo, hi + 1):
            w = isogeny_class_size(q, N, table)
            o = oc.by_order.get(N, 0)
            if w != o:
                print(f"  N={N}: formula {w}, oracle {o}")
    if mismatches:
        print(f"{mismatches} field(s) mismatched")
        return EXIT_MISMATCH
    print("all verified fields match")
    return EXIT_OK


def _ratio_key(num_den: tuple[int, int]) -> float:
    return num_den[0] / num_den[1]


def sweep_summary(rows) -> dict:
    tmax_hist = Counter(len(r.t_max) for r in rows)
    ratio_all = Counter(r.ratio for r in rows)
    ratio_same = Counter(r.ratio for r in rows if r.same_t)
    same = sum(1 for r in rows if r.same_t)
    buckets = [
        {
            "ratio": f"{num}/{den}",
            "value": round(num / den, 6),
            "count": cnt,
            "same_t_count": ratio_same.get((num, den), 0),
        }
        for (num, den), cnt in sorted(
            ratio_all.items(), key=lambda kv: (-kv[1], _ratio_key(kv[0]))
        )
    ]
    return {
        "primes": len(rows),
        "tmax_histogram": {str(k): v for k, v in sorted(tmax_hist.items())},
        "same_t": same,
        "different_t": len(rows) - same,
        "symmetric_tmax": sum(1 for r in rows if r.symmetric),
        "max_m_at_max": max(max(r.m_at_max) for r in rows) if rows else 0,
        "ratio_one_primes": [r.p for r in rows if r.ratio == (1, 1)],
        "ratio_buckets": buckets,
    }


def format_sweep_row(r) -> str:
    return ",".join(
        [
            str(r.p),
            str(r.G),
            str(r.I),
            str(r.ratio[0]),
            str(r.ratio[1]),
            ";".join(str(t) for t in r.t_max),
            "1" if r.same_t else "0",
            ";".join(str(m) for m in r.m_at_max),
            f"{r.scaled:.6f}",
        ]
    )


def cmd_sweep(args) -> int:
    if args.p_max < 2:
        raise UsageError("p_max must be at least 2")
    table = get_table(4 * args.p_max, args.cache_dir)
    rows = []
    out = Path(args.out)
    with open(out, "w") as f:
        f.write(SWEEP_COMMENT + "\n")
        f.write(SWEEP_HEADER + "\n")
        for row in sweep(2, args.p_max, table, threads=args.threads):
            rows.append(row)
            f.write(format_sweep_row(row) + "\n")
    summary = sweep_summary(rows)
    out.with_suffix(out.suffix + ".summary.json").write_text(
        json.dumps(summary, indent=2) + "\n"
    )
    print(f"swept {summary['primes']} primes p <= {args.p_max} -> {out}")
    print("T_max size histogram:", summary["tmax_histogram"])
    print(
        f"G and I at a common trace: {summary['same_t']}; "
        f"at different traces: {summary['different_t']}"
    )
    print(f"symmetric T_max: {summary['symmetric_tmax']}")
    print(f"largest m achieving G(p): {summary['max_m_at_max']}")
    print("ratio G/I = 1 at p in", summary["ratio_one_primes"])
    print("most frequent ratios:")
    for b in summary["ratio_buckets"][:15]:
        print(
            f"  {b['ratio']:>8}: {b['count']:6d} primes ({b['same_t_count']} on a common trace)"
        )
    return EXIT_OK


def cmd_avg(args) -> int:
    if args.Q < 2:
        raise UsageError("Q must be at least 2")
    if args.Q > 1_000_000:
        raise UsageError("Q above the 10^6 runtime guard")
    total = sum_F_upto(args.Q)
    theta = theta_constant(10_000_000).value
    main_term = theta * args.Q**1.5 / math.log(args.Q)
    print(f"sum of F(q) over prime powers q <= {args.Q}: {total}")
    print(f"main term theta * Q^(3/2) / log Q = {main_term:.3f} (theta = {theta:.9f})")
    print(f"ratio: {total / main_term:.6f}")
    return EXIT_OK


def cmd_theta(args) -> int:
    if args.M < 1:
        raise UsageError("M must be at least 1")
    est = theta_constant(args.M)
    print(f"theta partial sum over m <= {est.terms}: {est.value:.9f}")
    print(f"tail bound: {est.tail_bound:.9f}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _Parser(
        prog="curvecensus",
        description="Group structures of elliptic curves over finite fields: "
        "exact counts, bounds, averages, and prime sweeps.",
    )
    parser.add_argument(
        "--cache-dir",
        default=".cache",
        help="directory for class-number table caches (default ./.cache)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_census = sub.add_parser("census", help="all structures over one F_q")
    p_census.add_argument("q", type=int)
    p_census.add_argument("--format", choices=("json", "csv"), default="json")
    p_census.add_argument("--out", default=None, help="output path (default stdout)")
    p_census.set_defaults(func=cmd_census)

    p_verify = sub.add_parser("verify", help="formulas vs brute-force oracle")
    p_verify.add_argument("q_max", type=int)
    p_verify.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="per-prime G(p), I(p) statistics")
    p_sweep.add_argument("p_max", type=int)
    p_sweep.add_argument("--out", default="sweep.csv")
    p_sweep.add_argument("--threads", type=int, default=1)
    p_sweep.set_defaults(func=cmd_sweep)

    p_avg = sub.add_parser("avg", help="sum of F(q) against the asymptotic main term")
    p_avg.add_argument("Q", type=int)
    p_avg.set_defaults(func=cmd_avg)

    p_theta = sub.add_parser("theta", help="partial sums of the average constant")
    p_theta.add_argument("M", type=int)
    p_theta.set_defaults(func=cmd_theta)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"curvecensus: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryError as e:
        print(f"curvecensus: resource error: {e}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
