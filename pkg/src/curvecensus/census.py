"""Counting formulas for group structures of elliptic curves over F_q.

Everything here is exact integer arithmetic driven by class numbers of
imaginary quadratic orders:

  * per-trace data: discriminant conductor c_t and the square divisor s_t,
  * G(q; m, n): isomorphism classes realizing Z_m x Z_n (eight cases),
  * I(q; N): isogeny class sizes (Deuring-Waterhouse traces),
  * F(q): number of distinct structures, with tight bounds and the
    average-order constant,
  * a vectorized per-prime sweep producing the most-frequent-structure
    statistics (G(p), I(p), T_max, ...) for large prime ranges.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .arith import (
    PrimePower,
    divisor_count,
    divisors,
    factorize,
    primes_array,
    prime_powers_up_to,
    quadratic_character,
)
from .classnum import ClassNumberTable, class_number, conductor, kronecker_H


class GroupStructure(NamedTuple):
    m: int
    n: int


class CensusEntry(NamedTuple):
    structure: GroupStructure
    t: int
    count: int


@dataclass(frozen=True)
class TraceData:
    """Data attached to one Frobenius trace t over F_q."""

    q: PrimePower
    t: int
    N: int
    delta: int
    ordinary: bool
    c_t: int | None
    s_t: int | None


@dataclass
class CensusTable:
    """Every realizable (m, n) over F_q with its class count."""

    q: PrimePower
    entries: list[CensusEntry]  # sorted by (n, m)
    F: int
    G_max: int
    T_max: list[int]
    m_values_at_max: list[int]

    def structure_counts(self) -> dict[tuple[int, int], int]:
        return {(e.structure.m, e.structure.n): e.count for e in self.entries}


@dataclass
class SweepRow:
    p: int
    G: int
    I: int
    ratio: tuple[int, int]  # reduced G/I
    t_max: list[int]
    same_t: bool
    m_at_max: list[int]
    scaled: float

    @property
    def symmetric(self) -> bool:
        return set(self.t_max) == {-t for t in self.t_max}


class ThetaEstimate(NamedTuple):
    value: float
    tail_bound: float
    terms: int


def _chi(p: int, x: int) -> int:
    return quadratic_character(p, x)


def square_part_root(n: int) -> int:
    """Largest r with r**2 | n."""
    r = 1
    for p, e in factorize(n):
        r *= p ** (e // 2)
    return r


def trace_data(q: PrimePower, t: int) -> TraceData:
    """N, discriminant, conductor c_t and square divisor s_t for a trace."""
    if t * t > 4 * q.q:
        raise ValueError(f"trace {t} outside the Hasse interval for q={q.q}")
    N = q.q + 1 - t
    delta = t * t - 4 * q.q
    if t % q.p == 0:
        return TraceData(q, t, N, delta, False, None, None)
    c_t = conductor(delta)
    # s_t: maximal s with s^2 | N and s | q-1, i.e. gcd of the square-part
    # root of N with q-1 (the candidate set is the divisor set of that gcd).
    s_t = math.gcd(square_part_root(N), q.q - 1)
    assert c_t % s_t == 0, f"s_t | c_t violated at q={q.q}, t={t}"
    return TraceData(q, t, N, delta, True, c_t, s_t)


def st_partition(q: PrimePower, t: int, m: int) -> set[int]:
    """S_t(m): divisors e of c_t whose largest common divisor with s_t is m."""
    td = trace_data(q, t)
    if not td.ordinary:
        raise ValueError(f"trace {t} is not ordinary for q={q.q}")
    if m <= 0 or td.s_t % m:
        raise ValueError(f"m={m} does not divide s_t={td.s_t}")
    return {e for e in divisors(td.c_t) if math.gcd(e, td.s_t) == m}


def admissible_trace(q: PrimePower, t: int) -> bool:
    """Deuring-Waterhouse: is N = q+1-t the order of some curve over F_q?"""
    p, k, qq = q
    if t * t > 4 * qq:
        return False
    if t % p:
        return True
    if k % 2:
        return t == 0 or (p in (2, 3) and t * t == p * qq)
    if t == 0:
        return p % 4 != 1
    if t * t == qq:
        return p % 3 != 1
    return t * t == 4 * qq


def structure_exists(q: PrimePower, m: int, n: int) -> bool:
    """Is Z_m x Z_n realized by some curve over F_q (m <= n required)?"""
    if m < 1 or n < m:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    p, k, qq = q
    t = qq + 1 - m * n
    if t % p and t * t <= 4 * qq:
        return n % m == 0 and (qq - 1) % m == 0
    if k % 2:
        if t == 0:
            return m == 1 or (m == 2 and p % 4 == 3)
        return p in (2, 3) and m == 1 and t * t == p * qq
    if t == 0:
        return m == 1 and p % 4 != 1
    if t * t == qq:
        return m == 1 and p % 3 != 1
    if t * t == 4 * qq:
        rq = math.isqrt(qq)
        return m == n and m in (rq - 1, rq + 1)
    return False


def _h(D: int, table: ClassNumberTable | None) -> int:
    if table is not None and table.has(D):
        return table.h(D)
    return class_number(D)


def _H(D: int, table: ClassNumberTable | None) -> int:
    if table is not None and table.has(D):
        return table.kronecker(D)
    return kronecker_H(D)


def count_group_structures(
    q: PrimePower, m: int, n: int, table: ClassNumberTable | None = None
) -> int:
    """G(q; m, n): isomorphism classes of curves with E(F_q) = Z_m x Z_n.

    Returns 0 for every unrealizable pair.
    """
    if m < 1 or n < 1:
        raise ValueError(f"need positive m, n, got m={m}, n={n}")
    p, k, qq = q
    if m > n:
        return 0
    t = qq + 1 - m * n
    delta = t * t - 4 * qq
    if t % p and t * t <= 4 * qq:
        if n % m or (qq - 1) % m:
            return 0
        td = trace_data(q, t)
        assert td.s_t is not None and td.c_t is not None
        if td.s_t % m:
            return 0
        return sum(
            _h(delta // (l * l), table)
            for l in divisors(td.c_t)
            if math.gcd(l, td.s_t) == m
        )
    if k % 2:
        if m == 1 and n == qq + 1:
            return _h(-4 * p, table)
        if m == 2 and p % 4 == 3 and n == (qq + 1) // 2 and (qq + 1) % 2 == 0:
            return _h(-p, table)
        if m == 1 and p in (2, 3) and t * t == p * qq:
            return 1
        return 0
    if m == 1 and n == qq + 1:
        return 1 - _chi(p, -4)
    if m == 1 and t * t == qq:
        return 1 - _chi(p, -3)
    if m == n and t * t == 4 * qq:
        num = p + 6 - 4 * _chi(p, -3) - 3 * _chi(p, -4)
        assert num % 12 == 0
        return num // 12
    return 0


def isogeny_class_size(q: PrimePower, N: int, table: ClassNumberTable | None = None) -> int:
    """I(q; N): isomorphism classes of curves over F_q with exactly N points."""
    if N < 1:
        return 0
    p, k, qq = q
    t = qq + 1 - N
    if t % p and t * t <= 4 * qq:
        return _H(t * t - 4 * qq, table)
    if k % 2:
        if t == 0:
            return _H(-4 * p, table)
        if p in (2, 3) and t * t == p * qq:
            return 1
        return 0
    if t == 0:
        return 1 - _chi(p, -4) if p % 4 != 1 else 0
    if t * t == qq:
        return 1 - _chi(p, -3) if p % 3 != 1 else 0
    if t * t == 4 * qq:
        num = p + 6 - 4 * _chi(p, -3) - 3 * _chi(p, -4)
        assert num % 12 == 0
        return num // 12
    return 0


def f_per_trace(q: PrimePower, t: int) -> int:
    """Number of distinct group structures among curves of trace t."""
    p, k, qq = q
    if t * t > 4 * qq:
        raise ValueError(f"trace {t} outside the Hasse interval for q={qq}")
    if t % p:
        td = trace_data(q, t)
        assert td.s_t is not None
        return divisor_count(td.s_t)
    if k % 2:
        if t == 0:
            return 1 + (1 - _chi(p, -1)) // 2
        return 1 if p in (2, 3) and t * t == p * qq else 0
    if t == 0:
        return 1 if p == 2 else (1 - _chi(p, -1)) // 2
    if t * t == qq:
        return 1 if p == 3 else (1 - _chi(p, -3)) // 2
    return 1 if t * t == 4 * qq else 0


def _supersingular_f_total(q: PrimePower) -> int:
    # Closed form of the supersingular contribution to F(q).
    p, k, _ = q
    chi1 = _chi(p, -1)
    if k % 2:
        return (3 if p in (2, 3) else 1) + (1 - chi1) // 2
    if p in (2, 3):
        return 5
    return 3 + (1 - chi1) // 2 - _chi(p, -3)


def count_F(q: PrimePower) -> int:
    """F(q): the number of distinct group structures over F_q."""
    p, _, qq = q
    T = math.isqrt(4 * qq)
    total = 0
    for t in range(-T, T + 1):
        if t % p == 0:
            continue
        s_t = math.gcd(square_part_root(qq + 1 - t), qq - 1)
        total += divisor_count(s_t)
    return total + _supersingular_f_total(q)


def bounds_F(q: PrimePower) -> tuple[float, float]:
    """Strict (lower, upper) bounds with lower < F(q) < upper."""
    p, _, qq = q
    rq = math.sqrt(qq)
    upper = (2 * math.pi**2 / 3) * rq * (1 - 1 / p) + divisor_count(qq - 1) + 5
    if p == 2:
        lower = 2 * rq + 2
    else:
        lower = 5 * rq * (1 - 1 / p) - 2
    return lower, upper


def theta_constant(M: int) -> ThetaEstimate:
    """Partial sum of theta = (8/3) sum 1/(m^2 phi(m)) with a tail bound."""
    if M < 1:
        raise ValueError(f"theta_constant expects M >= 1, got {M}")
    if M > 200_000_000:
        raise MemoryError(f"M={M} too large for the totient sieve")
    if M < 1000:
        from .arith import euler_phi

        s = sum(1.0 / (m * m * euler_phi(m)) for m in range(1, M + 1))
    else:
        phi = np.arange(M + 1, dtype=np.int64)
        for p in primes_array(M).tolist():
            phi[p::p] -= phi[p::p] // p
        m = np.arange(1, M + 1, dtype=np.float64)
        s = float(np.sum(1.0 / (m * m * phi[1:].astype(np.float64))))
    # tail: sum_{m>M} 1/(m^2 phi(m)) <= sum_{m>M} 1/m^2 < 1/M
    return ThetaEstimate(8.0 / 3.0 * s, 8.0 / (3.0 * M), M)


THETA = 3.682609  # limit value of theta_constant, to 6 places


# ---------------------------------------------------------------------------
# Sieved tables shared by the fast per-prime paths.


def square_root_part_table(n_max: int) -> np.ndarray:
    """r[n] = largest r with r^2 | n, for 0 <= n <= n_max (r[0] = 1, unused)."""
    r = np.ones(n_max + 1, dtype=np.int64)
    for p in primes_array(math.isqrt(n_max)).tolist() if n_max >= 4 else []:
        pe = p * p
        while pe <= n_max:
            r[pe::pe] *= p
            pe *= p * p
    return r


def divisor_count_table(n_max: int) -> np.ndarray:
    """d[n] for 0 <= n <= n_max via the direct divisor sieve."""
    d = np.zeros(n_max + 1, dtype=np.int64)
    for i in range(1, n_max + 1):
        d[i::i] += 1
    return d


def _count_F_fast(q: PrimePower, r_tab: np.ndarray, d_tab: np.ndarray) -> int:
    p, _, qq = q
    T = math.isqrt(4 * qq)
    ts = np.arange(-T, T + 1, dtype=np.int64)
    if p > T:
        ts = ts[ts != 0]
    else:
        ts = ts[ts % p != 0]
    s = np.gcd(r_tab[qq + 1 - ts], qq - 1)
    return int(d_tab[s].sum()) + _supersingular_f_total(q)


def f_values_upto(Q: int) -> Iterator[tuple[PrimePower, int]]:
    """(q, F(q)) for every prime power q <= Q, ascending."""
    if Q < 2:
        raise ValueError(f"expected Q >= 2, got {Q}")
    n_max = Q + 1 + math.isqrt(4 * Q)
    r_tab = square_root_part_table(n_max)
    d_tab = divisor_count_table(math.isqrt(n_max) + 1)
    for q in prime_powers_up_to(Q):
        yield q, _count_F_fast(q, r_tab, d_tab)


def sum_F_upto(Q: int) -> int:
    """Exact sum of F(q) over prime powers q <= Q."""
    return sum(F for _, F in f_values_upto(Q))


# ---------------------------------------------------------------------------
# Proof-layer identities (divisor decomposition of F(q)).


def hasse_multiples(q: PrimePower, m: int) -> int:
    """#H_q(m): N in the Hasse interval with gcd(N-1, p) = 1 and m^2 | N."""
    p, _, qq = q
    T = math.isqrt(4 * qq)
    lo, hi = qq + 1 - T, qq + 1 + T
    mm = m * m
    first = ((lo + mm - 1) // mm) * mm
    count = 0
    for N in range(first, hi + 1, mm):
        if (N - 1) % p:
            count += 1
    return count


def delta_qm(q: PrimePower, m: int) -> int:
    """Supersingular correction delta_q(m); overlapping case rows add up."""
    p, k, qq = q
    total = 0
    if m == 1:
        if p in (2, 3):
            total += 3
        elif k % 2:
            total += 1
        else:
            total += 1 + (1 - _chi(p, -1)) // 2 - _chi(p, -3)
    if m == 2 and k % 2:
        total += (1 - _chi(p, -1)) // 2
    if k % 2 == 0:
        rq = math.isqrt(qq)
        if m in (rq - 1, rq + 1):
            total += 1
    return total


@dataclass
class ProofRow:
    m: int
    hasse: int
    delta: int
    g: int
    census_g: int
    bracket_checked: bool
    bracket_ok: bool


@dataclass
class ProofReport:
    q: PrimePower
    F: int
    rows: list[ProofRow]
    sum_ok: bool
    census_ok: bool
    bracket_ok: bool
    failures: list[str]

    @property
    def ok(self) -> bool:
        return self.sum_ok and self.census_ok and self.bracket_ok


def proof_identities(q: PrimePower, table: ClassNumberTable | None = None) -> ProofReport:
    """Check F(q) = sum g(q;m), the Hasse-count bracketing, and census agreement."""
    p, _, qq = q
    F = count_F(q)
    by_m: dict[int, int] = {}
    for e in census(q, table).entries:
        by_m[e.structure.m] = by_m.get(e.structure.m, 0) + 1
    rows: list[ProofRow] = []
    failures: list[str] = []
    total = 0
    for m in divisors(qq - 1):
        hm = hasse_multiples(q, m)
        dm = delta_qm(q, m)
        g = hm + dm
        total += g
        checked = (m - 1) * (m - 1) < qq  # m < sqrt(q) + 1
        mid = 4 * math.sqrt(qq) * (1 - 1 / p) / (m * m)
        b_ok = (not checked) or (mid - 2 < hm < mid + 2)
        if checked and not b_ok:
            failures.append(f"bracket failed at m={m}: #H={hm}, center {mid:.3f}")
        cg = by_m.get(m, 0)
        if cg != g:
            failures.append(f"g(q;{m}) = {g} but census has {cg} structures")
        rows.append(ProofRow(m, hm, dm, g, cg, checked, b_ok))
    if total != F:
        failures.append(f"sum g(q;m) = {total} != F(q) = {F}")
    return ProofReport(
        q,
        F,
        rows,
        sum_ok=(total == F),
        census_ok=all(r.g == r.census_g for r in rows),
        bracket_ok=all(r.bracket_ok for r in rows),
        failures=failures,
    )


# ---------------------------------------------------------------------------
# Full census of one field.


def _supersingular_entries(q: PrimePower, table: ClassNumberTable | None) -> list[CensusEntry]:
    p, k, qq = q
    out: list[CensusEntry] = []
    if k % 2:
        out.append(CensusEntry(GroupStructure(1, qq + 1), 0, _h(-4 * p, table)))
        if p % 4 == 3:
            out.append(CensusEntry(GroupStructure(2, (qq + 1) // 2), 0, _h(-p, table)))
        if p in (2, 3):
            root = math.isqrt(p * qq)
            out.append(CensusEntry(GroupStructure(1, qq + 1 - root), root, 1))
            out.append(CensusEntry(GroupStructure(1, qq + 1 + root), -root, 1))
    else:
        rq = math.isqrt(qq)
        if p % 4 != 1:
            out.append(CensusEntry(GroupStructure(1, qq + 1), 0, 1 - _chi(p, -4)))
        if p % 3 != 1:
            v = 1 - _chi(p, -3)
            out.append(CensusEntry(GroupStructure(1, qq + 1 - rq), rq, v))
            out.append(CensusEntry(GroupStructure(1, qq + 1 + rq), -rq, v))
        v7 = (p + 6 - 4 * _chi(p, -3) - 3 * _chi(p, -4)) // 12
        out.append(CensusEntry(GroupStructure(rq - 1, rq - 1), 2 * rq, v7))
        out.append(CensusEntry(GroupStructure(rq + 1, rq + 1), -2 * rq, v7))
    return out


def census(q: PrimePower, table: ClassNumberTable | None = None, check: bool = True) -> CensusTable:
    """All realizable structures over F_q with counts, F(q), and the maxima."""
    p, _, qq = q
    entries: list[CensusEntry] = []
    T = math.isqrt(4 * qq)
    for t in range(-T, T + 1):
        if t % p == 0:
            continue
        td = trace_data(q, t)
        assert td.c_t is not None and td.s_t is not None
        h_by_m: dict[int, int] = {}
        for l in divisors(td.c_t):
            g = math.gcd(l, td.s_t)
            h_by_m[g] = h_by_m.get(g, 0) + _h(td.delta // (l * l), table)
        for m in divisors(td.s_t):
            entries.append(CensusEntry(GroupStructure(m, td.N // m), t, h_by_m[m]))
    entries.extend(_supersingular_entries(q, table))
    entries.sort(key=lambda e: (e.structure.n, e.structure.m))
    F = len(entries)
    if check:
        expected = count_F(q)
        assert F == expected, f"census size {F} != count_F {expected} for q={qq}"
        assert len({e.structure for e in entries}) == F, f"duplicate structure for q={qq}"
    G_max = max(e.count for e in entries)
    T_max = sorted({e.t for e in entries if e.count == G_max})
    m_at_max = sorted({e.structure.m for e in entries if e.count == G_max})
    return CensusTable(q, entries, F, G_max, T_max, m_at_max)


# ---------------------------------------------------------------------------
# Prime sweep: vectorized per-prime evaluation of G(p), I(p) and friends.


def conductor_divisor_map(table: ClassNumberTable) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flattened map |Delta| -> [(l, h(Delta/l^2)) for l | c(Delta)].

    Returns (offsets, ls, hs): for index D the pairs live at
    slice offsets[D]:offsets[D+1] of ls/hs. Built once per table in O(X).
    """
    h = table.counts
    X = table.limit
    disc = np.flatnonzero(h).astype(np.int64)
    keys, ls, hs = [], [], []
    l = 1
    while l * l <= X:
        sub = disc[disc <= X // (l * l)]
        if len(sub) == 0:
            break
        keys.append(sub * (l * l))
        ls.append(np.full(len(sub), l, dtype=np.int64))
        hs.append(h[sub].astype(np.int64))
        l += 1
    key = np.concatenate(keys)
    order = np.argsort(key, kind="stable")
    counts = np.bincount(key, minlength=X + 2)
    offsets = np.zeros(X + 2, dtype=np.int64)
    np.cumsum(counts[:-1], out=offsets[1:])
    return offsets, np.concatenate(ls)[order], np.concatenate(hs)[order]


@dataclass
class _SweepContext:
    h: np.ndarray
    H: np.ndarray
    offsets: np.ndarray
    ls: np.ndarray
    hs: np.ndarray
    r_tab: np.ndarray
    d_tab: np.ndarray


def _ragged_gather(starts, lens):
    # Indices selecting the ragged segments [starts_i, starts_i + lens_i).
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    slot = np.repeat(np.arange(len(lens)), lens)
    head = np.zeros(len(lens), dtype=np.int64)
    np.cumsum(lens[:-1], out=head[1:])
    idx = np.repeat(starts, lens) + np.arange(total) - np.repeat(head, lens)
    return idx, slot


def _sweep_row(p: int, ctx: _SweepContext) -> SweepRow:
    T = math.isqrt(4 * p)
    ts = np.arange(-T, T + 1, dtype=np.int64)
    N = p + 1 - ts
    dabs = 4 * p - ts * ts  # |Delta|; the t=0 slot holds 4p
    Ivals = ctx.H[dabs]  # I(p; N) for every N in the interval (incl. t=0)
    Imax = int(Ivals.max())
    i_traces = set(ts[Ivals == Imax].tolist())

    s = np.gcd(ctx.r_tab[N], p - 1)
    ordinary = ts != 0
    fast = ordinary & (s == 1)
    slow_idx = np.flatnonzero(ordinary & (s > 1))

    # Supersingular t=0 structures: (1, p+1) and, for p = 3 mod 4, (2, (p+1)/2).
    ss: list[tuple[int, int]] = [(int(ctx.h[4 * p]), 1)]
    if p % 4 == 3:
        ss.append((int(ctx.h[p]), 2))
    # Ordinary traces with s_t = 1 carry the single structure (1, N), count H.
    fv = Ivals[fast]
    fast_max = int(fv.max()) if len(fv) else 0
    # Traces with s_t > 1: bucket h(Delta/l^2) over l | c_t by m = gcd(l, s_t).
    uk = sums = None
    base = 1
    if len(slow_idx):
        d_slow = dabs[slow_idx]
        starts = ctx.offsets[d_slow]
        lens = ctx.offsets[d_slow + 1] - starts
        idx, slot = _ragged_gather(starts, lens)
        ms = np.gcd(ctx.ls[idx], np.repeat(s[slow_idx], lens))
        base = int(s[slow_idx].max()) + 1
        uk, inv = np.unique(slot * base + ms, return_inverse=True)
        sums = np.bincount(inv, weights=ctx.hs[idx].astype(np.float64)).astype(np.int64)

    G = max(
        max(v for v, _ in ss),
        fast_max,
        int(sums.max()) if sums is not None else 0,
    )
    g_traces: set[int] = set()
    g_ms: set[int] = set()
    for v, m in ss:
        if v == G:
            g_traces.add(0)
            g_ms.add(m)
    if fast_max == G:
        g_traces.update(ts[fast][fv == G].tolist())
        g_ms.add(1)
    if sums is not None and int(sums.max()) == G:
        for key in uk[sums == G].tolist():
            g_traces.add(int(ts[slow_idx[key // base]]))
            g_ms.add(int(key % base))

    # Row invariants, exact in integers: max_N I/d(N) <= G <= I.
    assert G <= Imax
    assert bool(np.all(Ivals <= G * ctx.d_tab[N]))

    g = math.gcd(G, Imax)
    return SweepRow(
        p=p,
        G=G,
        I=Imax,
        ratio=(G // g, Imax // g),
        t_max=sorted(g_traces),
        same_t=bool(g_traces & i_traces),
        m_at_max=sorted(g_ms),
        scaled=G / (math.sqrt(p) * math.log(p)),
    )


def _census_row(p: int, table: ClassNumberTable) -> SweepRow:
    # Generic path for p = 2, 3 (extra supersingular traces) and cross-checks.
    q = PrimePower(p, 1, p)
    tab = census(q, table)
    lo, hi = p + 1 - math.isqrt(4 * p), p + 1 + math.isqrt(4 * p)
    i_by_n = {N: isogeny_class_size(q, N, table) for N in range(lo, hi + 1)}
    Imax = max(i_by_n.values())
    i_traces = {p + 1 - N for N, v in i_by_n.items() if v == Imax}
    G = tab.G_max
    g = math.gcd(G, Imax)
    return SweepRow(
        p=p,
        G=G,
        I=Imax,
        ratio=(G // g, Imax // g),
        t_max=tab.T_max,
        same_t=bool(set(tab.T_max) & i_traces),
        m_at_max=tab.m_values_at_max,
        scaled=G / (math.sqrt(p) * math.log(p)),
    )


def _make_context(table: ClassNumberTable, p_max: int) -> _SweepContext:
    offsets, ls, hs = conductor_divisor_map(table)
    n_max = p_max + 1 + math.isqrt(4 * p_max)
    return _SweepContext(
        h=table.counts.astype(np.int64),
        H=table.kronecker_array(),
        offsets=offsets,
        ls=ls,
        hs=hs,
        r_tab=square_root_part_table(n_max),
        d_tab=divisor_count_table(n_max),
    )


_WORKER: dict = {}


def _init_worker(table: ClassNumberTable, p_max: int) -> None:
    _WORKER["ctx"] = _make_context(table, p_max)
    _WORKER["table"] = table


def _run_chunk(primes: list[int]) -> list[SweepRow]:
    ctx, table = _WORKER["ctx"], _WORKER["table"]
    return [_census_row(p, table) if p < 5 else _sweep_row(p, ctx) for p in primes]


def sweep(
    p_min: int,
    p_max: int,
    table: ClassNumberTable,
    threads: int = 1,
    chunk: int = 512,
) -> Iterator[SweepRow]:
    """SweepRow for every prime in [p_min, p_max], in ascending order."""
    if table.limit < 4 * p_max:
        raise ValueError(
            f"class-number table limit {table.limit} insufficient: need {4 * p_max}"
        )
    ps = [int(p) for p in primes_array(p_max) if p >= p_min]
    if not ps:
        return
    if threads <= 1:
        _init_worker(table, p_max)
        try:
            for p in ps:
                yield _census_row(p, table) if p < 5 else _sweep_row(p, _WORKER["ctx"])
        finally:
            _WORKER.clear()
        return
    chunks = [ps[i : i + chunk] for i in range(0, len(ps), chunk)]
    with multiprocessing.get_context("fork").Pool(
        threads, initializer=_init_worker, initargs=(table, p_max)
    ) as pool:
        for rows in pool.imap(_run_chunk, chunks):
            yield from rows
