"""Ground truth by brute force: enumerate all short Weierstrass curves over
small F_q (characteristic >= 5), split them into F_q-isomorphism classes via
the quartic/sextic twist action, and read off each class's group structure by
point enumeration.

Field elements are encoded as integers in [0, q): the base-p digits are the
polynomial coefficients with the constant term least significant, so integer
order is lexicographic order on (high, ..., low) coefficient tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .arith import factorize, is_prime
from .census import GroupStructure

DEFAULT_ORACLE_CAP = 250

Point = tuple[int, int] | None  # None is the point at infinity


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    # Remainder of num / den over F_p; den monic.
    num = num[:]
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    while len(num) > 1 and num[-1] % p == 0:
        num.pop()
    return [c % p for c in num]


def _is_irreducible(f: list[int], p: int) -> bool:
    # Brute force: no monic divisor of degree 1..deg/2.
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for m in range(p**d):
            g = _digits(m, p, d) + [1]
            rem = _poly_mod(f, g, p)
            if len(rem) == 1 and rem[0] == 0:
                return False
    return True


def _digits(e: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(e % p)
        e //= p
    return out


@dataclass
class FieldCtx:
    """F_q with q = p**k <= cap, all arithmetic as precomputed tables."""

    p: int
    k: int
    q: int
    modulus: tuple[int, ...]  # monic, low to high coefficients
    add: list[int] = field(repr=False, default_factory=list)  # [a*q+b]
    mul: list[int] = field(repr=False, default_factory=list)
    neg: list[int] = field(repr=False, default_factory=list)
    inv: list[int] = field(repr=False, default_factory=list)  # inv[0] unused
    sqrts: list[list[int]] = field(repr=False, default_factory=list)

    def num_sqrt(self, v: int) -> int:
        return len(self.sqrts[v])


def make_field(p: int, k: int, cap: int = DEFAULT_ORACLE_CAP) -> FieldCtx:
    """Deterministic F_{p^k} context; the modulus is the lexicographically
    smallest monic irreducible of degree k."""
    if p < 5 or not is_prime(p):
        raise ValueError(f"oracle fields need a prime p >= 5, got {p}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    q = p**k
    if q > cap:
        raise ValueError(f"q = {q} exceeds the oracle cap {cap}")

    if k == 1:
        modulus = (0, 1)
    else:
        for m in range(q):
            f = _digits(m, p, k) + [1]
            if _is_irreducible(f, p):
                modulus = tuple(f)
                break
        else:  # pragma: no cover - irreducibles of every degree exist
            raise AssertionError("no irreducible polynomial found")

    ctx = FieldCtx(p, k, q, modulus)
    polys = [_digits(e, p, k) for e in range(q)]

    def encode(c: list[int]) -> int:
        e = 0
        for d in reversed(c[:k]):
            e = e * p + d
        return e

    mod_list = list(modulus)
    for a in range(q):
        ca = polys[a]
        for b in range(q):
            cb = polys[b]
            ctx.add.append(encode([(x + y) % p for x, y in zip(ca, cb)]))
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(ca):
                if x:
                    for j, y in enumerate(cb):
                        prod[i + j] += x * y
            r = _poly_mod(prod, mod_list, p) if k > 1 else [prod[0] % p]
            r += [0] * (k - len(r))
            ctx.mul.append(encode(r))
    for a in range(q):
        ctx.neg.append(encode([(-x) % p for x in polys[a]]))
    ctx.inv = [0] * q
    for a in range(1, q):
        for b in range(1, q):
            if ctx.mul[a * q + b] == 1:
                ctx.inv[a] = b
                break
    ctx.sqrts = [[] for _ in range(q)]
    for y in range(q):
        ctx.sqrts[ctx.mul[y * q + y]].append(y)
    return ctx


class ShortCurve(NamedTuple):
    """y^2 = x^3 + a x + b over ctx, nonsingular."""

    ctx: FieldCtx
    a: int
    b: int


def _embed(ctx: FieldCtx, n: int) -> int:
    # Image of the small integer n in F_q (prime-subfield element).
    return n % ctx.p


def is_singular(ctx: FieldCtx, a: int, b: int) -> bool:
    q, mul, add = ctx.q, ctx.mul, ctx.add
    a3 = mul[mul[a * q + a] * q + a]
    b2 = mul[b * q + b]
    four_a3 = mul[_embed(ctx, 4) * q + a3]
    t27b2 = mul[_embed(ctx, 27) * q + b2]
    return add[four_a3 * q + t27b2] == 0


def curve(ctx: FieldCtx, a: int, b: int) -> ShortCurve:
    if is_singular(ctx, a, b):
        raise ValueError(f"curve y^2 = x^3 + {a}x + {b} is singular over F_{ctx.q}")
    return ShortCurve(ctx, a, b)


def ec_add(c: ShortCurve, P: Point, Q: Point) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    ctx = c.ctx
    q, mul, add, neg, inv = ctx.q, ctx.mul, ctx.add, ctx.neg, ctx.inv
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if add[y1 * q + y2] == 0:
            return None
        # tangent: s = (3 x1^2 + a) / (2 y1)
        num = add[mul[_embed(ctx, 3) * q + mul[x1 * q + x1]] * q + c.a]
        den = mul[_embed(ctx, 2) * q + y1]
    else:
        num = add[y2 * q + neg[y1]]
        den = add[x2 * q + neg[x1]]
    s = mul[num * q + inv[den]]
    x3 = add[add[mul[s * q + s] * q + neg[x1]] * q + neg[x2]]
    y3 = add[mul[s * q + add[x1 * q + neg[x3]]] * q + neg[y1]]
    return (x3, y3)


def ec_mul(c: ShortCurve, n: int, P: Point) -> Point:
    out: Point = None
    base = P
    while n > 0:
        if n & 1:
            out = ec_add(c, out, base)
        base = ec_add(c, base, base)
        n >>= 1
    return out


def _rhs(c: ShortCurve, x: int) -> int:
    ctx = c.ctx
    q, mul, add = ctx.q, ctx.mul, ctx.add
    x3 = mul[mul[x * q + x] * q + x]
    return add[add[x3 * q + mul[c.a * q + x]] * q + c.b]


def point_count(c: ShortCurve) -> int:
    """#E(F_q) = 1 + sum over x of the number of square roots of x^3+ax+b."""
    N = 1 + sum(c.ctx.num_sqrt(_rhs(c, x)) for x in range(c.ctx.q))
    assert abs(N - c.ctx.q - 1) <= 2 * math.isqrt(c.ctx.q) + 1, "Hasse-Weil violated"
    return N


def points(c: ShortCurve) -> list[Point]:
    out: list[Point] = [None]
    for x in range(c.ctx.q):
        for y in c.ctx.sqrts[_rhs(c, x)]:
            out.append((x, y))
    return out


def _point_order(c: ShortCurve, P: Point, N: int, prime_factors: list[int]) -> int:
    o = N
    for l in prime_factors:
        while o % l == 0 and ec_mul(c, o // l, P) is None:
            o //= l
    return o


def group_structure(c: ShortCurve) -> GroupStructure:
    """(m, n) with E(F_q) = Z_m x Z_n, m | n: n is the group exponent."""
    pts = points(c)
    N = len(pts)
    assert N == point_count(c)
    prime_factors = [p for p, _ in factorize(N)]
    exponent = 1
    for P in pts:
        if P is None:
            continue
        if ec_mul(c, exponent, P) is not None:
            exponent = math.lcm(exponent, _point_order(c, P, N, prime_factors))
            if exponent == N:
                break
    m = N // exponent
    assert exponent % m == 0 and (c.ctx.q - 1) % m == 0, "structure theorem violated"
    return GroupStructure(m, exponent)


def iso_classes(ctx: FieldCtx) -> list[ShortCurve]:
    """One representative per F_q-isomorphism class: the orbit minimum of
    (a, b) under (a, b) -> (u^4 a, u^6 b)."""
    q, mul = ctx.q, ctx.mul
    visited = bytearray(q * q)
    reps: list[ShortCurve] = []
    twists = []
    for u in range(1, q):
        u2 = mul[u * q + u]
        u4 = mul[u2 * q + u2]
        u6 = mul[u4 * q + u2]
        twists.append((u4, u6))
    for a in range(q):
        for b in range(q):
            if visited[a * q + b]:
                continue
            for u4, u6 in twists:
                visited[mul[u4 * q + a] * q + mul[u6 * q + b]] = 1
            if not is_singular(ctx, a, b):
                reps.append(ShortCurve(ctx, a, b))
    return reps


@dataclass
class OracleCensus:
    q: int
    by_structure: dict[tuple[int, int], int]
    by_order: dict[int, int]
    n_classes: int

    @property
    def distinct_structures(self) -> int:
        return len(self.by_structure)


def oracle_census(ctx: FieldCtx) -> OracleCensus:
    """Tally group structures and orders over all isomorphism classes."""
    by_structure: dict[tuple[int, int], int] = {}
    by_order: dict[int, int] = {}
    reps = iso_classes(ctx)
    for rep in reps:
        m, n = group_structure(rep)
        by_structure[(m, n)] = by_structure.get((m, n), 0) + 1
        by_order[m * n] = by_order.get(m * n, 0) + 1
    return OracleCensus(ctx.q, by_structure, by_order, len(reps))
