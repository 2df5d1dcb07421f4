"""Exact integer primitives: valuations, integer roots, perfect powers,
divisor pairs and primality.

Nothing here touches floating point.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple


class ValuationResult(NamedTuple):
    exponent: int
    unit: int


def v_adic(n: int, q: int) -> ValuationResult:
    """Split ``n = q**k * u`` with ``q`` not dividing ``u``."""
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    if q < 2 or not is_prime(q):
        raise ValueError(f"{q} is not prime")
    k = 0
    while n % q == 0:
        n //= q
        k += 1
    return ValuationResult(k, n)


def valuation(n: int, q: int) -> int:
    """``ord_q(n)`` for nonzero ``n``; no primality check (hot path)."""
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    k = 0
    while n % q == 0:
        n //= q
        k += 1
    return k


def iroot(N: int, d: int) -> tuple[int, bool]:
    """Return ``(floor(N ** (1/d)), exact)``.

    For odd ``d`` the root of a negative number is the negated root of
    ``|N|`` (so it truncates toward zero).  Square roots go through
    :func:`math.isqrt`; higher degrees bisect inside the bit-length bracket.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    if N < 0:
        if d % 2 == 0:
            raise ValueError("even root of a negative number")
        r, exact = iroot(-N, d)
        return -r, exact
    if N < 2:
        return N, True
    if d == 2:
        r = math.isqrt(N)
        return r, r * r == N
    bits = N.bit_length()
    if d >= bits:
        # 2**d > N, so the root is 1
        return 1, N == 1
    lo = 1 << ((bits - 1) // d)
    hi = 1 << ((bits - 1) // d + 1)
    # invariant: lo**d <= N < hi**d
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**d <= N:
            lo = mid
        else:
            hi = mid
    return lo, lo**d == N


def _max_exponent(N: int) -> tuple[int, int]:
    """Write ``N > 1`` as ``z**k`` with ``k`` maximal."""
    base, k = N, 1
    changed = True
    while changed:
        changed = False
        for p in _primes_up_to(base.bit_length()):
            r, exact = iroot(base, p)
            if exact:
                base, k = r, k * p
                changed = True
                break
    return base, k


def perfect_power_exponents(N: int, maxM: int) -> list[tuple[int, int]]:
    """All ``(y, m)`` with ``y**m == N`` and ``2 <= m <= maxM``, ordered by m.

    For even ``m`` only the positive root is reported; the negative one is
    implied.  ``N`` in ``{0, 1, -1}`` yields the whole degenerate family up
    to ``maxM``.
    """
    if maxM < 2:
        raise ValueError("maxM must be at least 2")
    ms = range(2, maxM + 1)
    if N == 0:
        return [(0, m) for m in ms]
    if N == 1:
        return [(1, m) for m in ms]
    if N == -1:
        return [(-1, m) for m in ms if m % 2]
    base, k = _max_exponent(abs(N))
    out = []
    for m in ms:
        if k % m:
            continue
        if N < 0 and m % 2 == 0:
            continue
        y = base ** (k // m)
        out.append((-y if N < 0 else y, m))
    return out


def divisors(N: int) -> list[int]:
    """Positive divisors of ``|N|`` by trial division, ascending."""
    N = abs(N)
    if N == 0:
        raise ValueError("zero has infinitely many divisors")
    small, large = [], []
    d = 1
    while d * d <= N:
        if N % d == 0:
            small.append(d)
            if d * d != N:
                large.append(N // d)
        d += 1
    return small + large[::-1]


def divisor_pairs(N: int) -> list[tuple[int, int]]:
    """Every ordered pair of integers ``(d1, d2)`` with ``d1 * d2 == N``."""
    if N == 0:
        raise ValueError("zero has infinitely many divisor pairs")
    out = []
    for d in divisors(N):
        out.append((d, N // d))
        out.append((-d, -(N // d)))
    return sorted(out)


_TRIAL_LIMIT = 1 << 16
# deterministic for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic primality.

    Trial division below 2**16, strong-pseudoprime test to the first 13
    prime bases above (exact for every n < 3.3 * 10**24).
    """
    if n < 2:
        return False
    if n < _TRIAL_LIMIT:
        if n % 2 == 0:
            return n == 2
        f = 3
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True
    for b in _MR_BASES:
        if n % b == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=64)
def _primes_up_to(n: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i, f in enumerate(sieve) if f)


def primes_up_to(n: int) -> list[int]:
    return list(_primes_up_to(n))


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``|n|`` by trial division."""
    n = abs(n)
    if n == 0:
        raise ValueError("zero has no factorization")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    n = abs(n)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        if n % f == 0:
            n //= f
        f += 1
    return True


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a | n)`` for ``n > 0``."""
    if n <= 0:
        raise ValueError("kronecker symbol implemented for n > 0 only")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n
    a %= n
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
