"""Class numbers of imaginary quadratic orders via reduced binary quadratic forms.

h(D) counts primitive reduced positive-definite forms a x^2 + b xy + c y^2
of discriminant D = b^2 - 4ac, with the classical reduction conventions
  -a < b <= a <= c,  and b >= 0 whenever a == c.
Two paths are provided: a pointwise enumeration (class_number) and a batch
sieve (build_table) that fills h for every discriminant |D| <= X in one pass.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .arith import Factorization, factorize

_CACHE_MAGIC = b"CNT1"

# Refuse tables above this many counter slots unless the caller raises the cap.
DEFAULT_LIMIT_CAP = 1 << 28


class FundamentalDecomposition(NamedTuple):
    delta: int
    fundamental: int
    conductor: int


def is_discriminant(D: int) -> bool:
    """True iff D is a negative quadratic discriminant (D < 0, D = 0,1 mod 4)."""
    return D < 0 and D % 4 in (0, 1)


def _check_discriminant(D: int) -> None:
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a negative discriminant (need D < 0, D = 0 or 1 mod 4)")


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """All primitive reduced forms of discriminant D, sorted."""
    _check_discriminant(D)
    out = []
    amax = math.isqrt(-D // 3)
    for a in range(1, amax + 1):
        # b runs over (-a, a] with b^2 = D mod 2 parity.
        b = -a + 1
        if (b - D) % 2:
            b += 1
        while b <= a:
            num = b * b - D
            if num % (4 * a) == 0:
                c = num // (4 * a)
                if c >= a and not (a == c and b < 0):
                    if math.gcd(math.gcd(a, abs(b)), c) == 1:
                        out.append((a, b, c))
            b += 2
    return sorted(out)


def class_number(D: int) -> int:
    """h(D): the number of primitive reduced forms of discriminant D."""
    _check_discriminant(D)
    count = 0
    amax = math.isqrt(-D // 3)
    for a in range(1, amax + 1):
        fa = 4 * a
        b = -a + 1
        if (b - D) % 2:
            b += 1
        while b <= a:
            num = b * b - D
            if num % fa == 0:
                c = num // fa
                if c >= a and not (a == c and b < 0):
                    if math.gcd(math.gcd(a, abs(b)), c) == 1:
                        count += 1
            b += 2
    return count


def conductor(D: int, fac: Factorization | None = None) -> int:
    """Largest c with c^2 | D and D/c^2 still a discriminant."""
    _check_discriminant(D)
    if fac is None:
        fac = factorize(-D)
    c0 = 1
    for p, e in fac:
        c0 *= p ** (e // 2)
    if (D // (c0 * c0)) % 4 in (0, 1):
        return c0
    # D/c0^2 = 2 or 3 mod 4 forces c0 even; halving restores divisibility by 4.
    return c0 // 2


def fundamental_decomposition(D: int) -> FundamentalDecomposition:
    """Split D = c^2 * D_K with D_K the fundamental discriminant."""
    c = conductor(D)
    return FundamentalDecomposition(D, D // (c * c), c)


def kronecker_H(D: int) -> int:
    """Kronecker class number H(D) = sum of h(D/l^2) over divisors l of the conductor."""
    c = conductor(D)
    total = 0
    l = 1
    while l <= c:
        if c % l == 0:
            total += class_number(D // (l * l))
        l += 1
    return total


def _mobius_pairs(g: int, cache: dict[int, list[tuple[int, int]]]) -> list[tuple[int, int]]:
    # Squarefree divisors of g with their Mobius signs, d=1 first.
    got = cache.get(g)
    if got is None:
        got = [(1, 1)]
        for p, _ in factorize(g):
            got += [(d * p, -s) for d, s in got]
        got.sort()
        cache[g] = got
    return got


def build_counts(X: int) -> np.ndarray:
    """One sieve pass over reduced forms: counts[|D|] = h(D) for all |D| <= X.

    For each (a, b) the admissible c values make |D| = 4ac - b^2 an arithmetic
    progression, so each bucket update is a strided slice increment; imprimitive
    triples are removed by Mobius inclusion-exclusion over gcd(a, b).
    """
    if X < 3:
        raise ValueError(f"build_counts expects X >= 3, got {X}")
    counts = np.zeros(X + 1, dtype=np.int64)
    mob_cache: dict[int, list[tuple[int, int]]] = {}
    amax = math.isqrt(X // 3)
    for a in range(1, amax + 1):
        fa = 4 * a
        for b in range(-a + 1, a + 1):
            bb = b * b
            c_lo = max(a, bb // fa + 1)
            if b < 0 and c_lo == a:
                c_lo = a + 1  # (a, -|b|, a) is not reduced
            c_hi = (bb + X) // fa
            if c_hi < c_lo:
                continue
            for d, sign in _mobius_pairs(math.gcd(a, b), mob_cache):
                first = c_lo if d == 1 else ((c_lo + d - 1) // d) * d
                if first > c_hi:
                    continue
                start = fa * first - bb
                step = fa * d
                stop = fa * c_hi - bb + 1
                counts[start:stop:step] += sign
    return counts


def kronecker_counts(h: np.ndarray) -> np.ndarray:
    """Derive H(D) for every |D| <= X from the h table in O(X) slice work."""
    X = len(h) - 1
    H = h.astype(np.int64, copy=True)
    l = 2
    while l * l <= X:
        ll = l * l
        top = X // ll
        H[ll ::ll] += h[1 : top + 1]
        l += 1
    return H


@dataclass
class ClassNumberTable:
    """h(D) for every discriminant -X <= D < 0; zero marks non-discriminants."""

    limit: int
    counts: np.ndarray  # uint32, index |D|
    _kron: np.ndarray | None = field(default=None, repr=False, compare=False)

    def has(self, D: int) -> bool:
        return is_discriminant(D) and -D <= self.limit

    def h(self, D: int) -> int:
        _check_discriminant(D)
        if -D > self.limit:
            raise ValueError(f"|D|={-D} exceeds table limit {self.limit}")
        return int(self.counts[-D])

    def kronecker_array(self) -> np.ndarray:
        if self._kron is None:
            self._kron = kronecker_counts(self.counts)
        return self._kron

    def kronecker(self, D: int) -> int:
        _check_discriminant(D)
        if -D > self.limit:
            raise ValueError(f"|D|={-D} exceeds table limit {self.limit}")
        return int(self.kronecker_array()[-D])

    def save(self, path) -> None:
        with open(path, "wb") as f:
            f.write(_CACHE_MAGIC)
            f.write(struct.pack("<Q", self.limit))
            f.write(self.counts[1:].astype("<u4").tobytes())

    @classmethod
    def load(cls, path) -> "ClassNumberTable":
        with open(path, "rb") as f:
            magic = f.read(4)
            if magic != _CACHE_MAGIC:
                raise ValueError(f"{path}: bad magic {magic!r}, expected {_CACHE_MAGIC!r}")
            (limit,) = struct.unpack("<Q", f.read(8))
            raw = np.frombuffer(f.read(4 * limit), dtype="<u4")
            if len(raw) != limit:
                raise ValueError(f"{path}: truncated table (have {len(raw)} of {limit} counters)")
        counts = np.zeros(limit + 1, dtype=np.uint32)
        counts[1:] = raw
        return cls(int(limit), counts)


def build_table(X: int, limit_cap: int = DEFAULT_LIMIT_CAP) -> ClassNumberTable:
    """Batch class-number table for all |D| <= X."""
    if X < 3:
        raise ValueError(f"build_table expects X >= 3, got {X}")
    if X > limit_cap:
        raise MemoryError(
            f"class-number table limit {X} exceeds cap {limit_cap} "
            f"(would need ~{4 * X / 1e6:.0f} MB); raise the cap to proceed"
        )
    counts = build_counts(X)
    return ClassNumberTable(X, counts.astype(np.uint32))
