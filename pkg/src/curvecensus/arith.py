"""Integer and multiplicative number theory shared by the rest of the package.

Factorization is exact and deterministic for everything below 2**64:
trial division by sieved primes first, then Miller-Rabin with a fixed
witness set, with Brent's variant of Pollard rho for stubborn cofactors.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

Factorization = list[tuple[int, int]]


class PrimePower(NamedTuple):
    """q = p**k with p prime and k >= 1."""

    p: int
    k: int
    q: int


# Witnesses proving primality for all n < 3.3e24 (Sorenson-Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 1_000_000
_trial_primes: list[int] | None = None


def _small_primes() -> list[int]:
    global _trial_primes
    if _trial_primes is None:
        _trial_primes = primes_up_to(_TRIAL_LIMIT)
    return _trial_primes


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
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


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle finding)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        y, c, m = 2 + seed, 1 + seed, 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        seed += 1


def factorize(n: int) -> Factorization:
    """Canonical prime factorization as (prime, exponent) pairs sorted by prime."""
    if n <= 0:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        # Cofactor survived trial division; split it recursively.
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            root = math.isqrt(m)
            if root * root == m:
                stack += [root, root]
                continue
            d = _pollard_rho(m)
            stack += [d, m // d]
    return sorted(out.items())


def divisor_count(n: int) -> int:
    """d(n), the number of positive divisors."""
    if n <= 0:
        raise ValueError(f"divisor_count expects n >= 1, got {n}")
    out = 1
    for _, e in factorize(n):
        out *= e + 1
    return out


def euler_phi(n: int) -> int:
    """Euler's totient."""
    if n <= 0:
        raise ValueError(f"euler_phi expects n >= 1, got {n}")
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


def divisors(n: int | Factorization) -> list[int]:
    """All positive divisors, ascending. Accepts an integer or a factorization."""
    fac = factorize(n) if isinstance(n, int) else n
    out = [1]
    for p, e in fac:
        out = [d * pe for d in out for pe in _powers(p, e)]
    return sorted(out)


def _powers(p: int, e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out.append(out[-1] * p)
    return out


def _jacobi(a: int, n: int) -> int:
    # Jacobi symbol (a/n) for odd n > 0; equals the Legendre symbol for prime n.
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def quadratic_character(p: int, x: int) -> int:
    """Quadratic character mod p, defined for every integer x.

    Odd p: 0 if p | x, 1 on nonzero squares, -1 otherwise.
    p = 2: 0 for even x, 1 for x = +-1 mod 8, -1 for x = +-3 mod 8.
    """
    if not is_prime(p):
        raise ValueError(f"quadratic_character needs a prime modulus, got {p}")
    if p == 2:
        r = x % 8
        if r % 2 == 0:
            return 0
        return 1 if r in (1, 7) else -1
    return _jacobi(x, p)


def primes_up_to(z: int) -> list[int]:
    """All primes <= z, ascending."""
    return primes_array(z).tolist()


def primes_array(z: int) -> np.ndarray:
    """Primes <= z as an int64 array (segmented sieve, O(sqrt z) working set)."""
    if z < 2:
        raise ValueError(f"primes_up_to expects z >= 2, got {z}")
    root = math.isqrt(z)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for i in range(2, math.isqrt(root) + 1):
        if base[i]:
            base[i * i :: i] = False
    base_primes = np.flatnonzero(base)
    chunks = [base_primes[base_primes <= z]]
    seg = max(1 << 15, root)
    lo = root + 1
    while lo <= z:
        hi = min(lo + seg, z + 1)
        mask = np.ones(hi - lo, dtype=bool)
        for p in base_primes:
            p = int(p)
            start = (-lo) % p
            mask[start::p] = False
        chunks.append(np.flatnonzero(mask) + lo)
        lo = hi
    return np.concatenate(chunks).astype(np.int64)


def prime_powers_up_to(Q: int) -> list[PrimePower]:
    """All prime powers p**k <= Q with k >= 1, ascending by value."""
    if Q < 2:
        raise ValueError(f"prime_powers_up_to expects Q >= 2, got {Q}")
    out = [PrimePower(int(p), 1, int(p)) for p in primes_array(Q)]
    for p in primes_up_to(math.isqrt(Q)):
        q, k = p * p, 2
        while q <= Q:
            out.append(PrimePower(p, k, q))
            q *= p
            k += 1
    out.sort(key=lambda pp: pp.q)
    return out


def pi_progression(z: int, s: int, r: int) -> int:
    """Number of primes <= z congruent to r mod s."""
    if s < 1:
        raise ValueError(f"pi_progression expects s >= 1, got {s}")
    if not 0 <= r < s:
        raise ValueError(f"pi_progression expects 0 <= r < s, got r={r}, s={s}")
    if z < 2:
        raise ValueError(f"pi_progression expects z >= 2, got {z}")
    ps = primes_array(z)
    return int(np.count_nonzero(ps % s == r))


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0 or k < 1:
        raise ValueError("iroot expects n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    r = int(round(n ** (1.0 / k)))
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def as_prime_power(q: int) -> PrimePower | None:
    """Decompose q as p**k with p prime, or None if q is not a prime power."""
    if q < 2:
        return None
    for k in range(q.bit_length() - 1, 0, -1):
        r = iroot(q, k)
        if r**k == q and is_prime(r):
            return PrimePower(r, k, q)
    return None
