"""Descent for ``n(4n - 3) = y**p`` and the brute-force solution oracle.

The equation splits by ``ord_3(n)`` into three coprime-factor shapes:

    case 1   3 does not divide n    n = a**p,            4n - 3 = b**p
    case 2   ord_3(n) == 1          n = 3 t**p,          4n - 3 = 3**(p-1) u**p
    case 3   ord_3(n) >= 2          n = 3**(p-1) v**p,   4n - 3 = 3 w**p

each leading to a binary form equation handled in :mod:`decapower.thue`
(p = 3, 5) or a Frey curve (p >= 7).
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .arith import divisor_pairs, iroot, is_prime, perfect_power_exponents, primes_up_to, valuation


class DescentError(ArithmeticError):
    """An exact root the descent relies on does not exist.

    Raised only if the coprime-factor argument breaks, which would be a
    counterexample to the classification; callers should abort loudly.
    """


class Case(enum.Enum):
    CASE1 = 1
    CASE2 = 2
    CASE3 = 3

    @property
    def names(self) -> tuple[str, str]:
        return {1: ("a", "b"), 2: ("t", "u"), 3: ("v", "w")}[self.value]


def polygonal(s: int, n: int) -> int:
    """The n-th s-gonal number ``((s-2) n**2 - (s-4) n) / 2``."""
    if s < 3:
        raise ValueError("polygonal numbers need s >= 3")
    num = (s - 2) * n * n - (s - 4) * n
    # n**2 and n share parity, so num is always even
    return num // 2


def decagonal(n: int) -> int:
    return n * (4 * n - 3)


class EquationSolution(NamedTuple):
    n: int
    y: int
    m: int


@dataclass(frozen=True)
class DescentWitness:
    """Coprime pair produced by the descent, tagged with its case.

    ``first``/``second`` are (a, b), (t, u) or (v, w) depending on ``case``.
    """

    p: int
    case: Case
    first: int
    second: int

    def n(self) -> int:
        p, x = self.p, self.first
        if self.case is Case.CASE1:
            return x**p
        if self.case is Case.CASE2:
            return 3 * x**p
        return 3 ** (p - 1) * x**p

    def y(self) -> int:
        if self.case is Case.CASE1:
            return self.first * self.second
        return 3 * self.first * self.second

    def ternary_residual(self) -> int:
        """Left side minus right side of the case's ternary equation."""
        p, x, z = self.p, self.first, self.second
        if self.case is Case.CASE1:
            return 4 * x**p - z**p - 3
        if self.case is Case.CASE2:
            return 4 * x**p - 3 ** (p - 2) * z**p - 1
        return 4 * 3 ** (p - 2) * x**p - z**p - 1

    def violations(self) -> list[str]:
        """Invariant failures; empty for a genuine witness."""
        p, x, z = self.p, self.first, self.second
        bad = []
        if not is_prime(p):
            bad.append(f"p={p} not prime")
        if math.gcd(x, z) != 1:
            bad.append("pair not coprime")
        n = self.n()
        if n == 0:
            bad.append("n = 0")
        elif classify_case(n) is not self.case:
            bad.append("case tag disagrees with ord_3(n)")
        if self.case is Case.CASE1:
            rhs = z**p
        elif self.case is Case.CASE2:
            rhs = 3 ** (p - 1) * z**p
            if x % 3 == 0:
                bad.append("3 | t")
        else:
            rhs = 3 * z**p
            if z % 3 == 0:
                bad.append("3 | w")
        if 4 * n - 3 != rhs:
            bad.append("4n - 3 mismatch")
        if p >= 3 and self.ternary_residual() != 0:
            bad.append("ternary equation fails")
        return bad


@dataclass(frozen=True)
class ThueInstance:
    """``c1 x**d + c2 y**d = c3`` with provenance."""

    c1: int
    c2: int
    c3: int
    d: int
    case: Case | None = None
    p: int | None = None

    def __post_init__(self):
        if self.c1 == 0 or self.c2 == 0:
            raise ValueError("Thue instance needs nonzero c1 and c2")
        if self.d < 2:
            raise ValueError("degree must be at least 2")

    def evaluate(self, x: int, y: int) -> int:
        return self.c1 * x**self.d + self.c2 * y**self.d

    def __str__(self) -> str:
        return f"{self.c1}*x^{self.d} + {self.c2}*y^{self.d} = {self.c3}"


def classify_case(n: int) -> Case:
    if n == 0:
        raise ValueError("n = 0 is excluded from the descent")
    k = valuation(n, 3)
    if k == 0:
        return Case.CASE1
    return Case.CASE2 if k == 1 else Case.CASE3


def _exact_root(N: int, p: int, what: str) -> int:
    if p % 2 == 0 and N < 0:
        raise DescentError(f"{what} = {N} is negative, no even root")
    r, exact = iroot(N, p)
    if not exact:
        raise DescentError(f"{what} = {N} is not a perfect {p}-th power")
    return r


def descend(n: int, y: int, p: int) -> DescentWitness:
    """Extract the coprime witness for a solution of ``n(4n-3) = y**p``."""
    if n == 0:
        raise ValueError("n = 0 is excluded from the descent")
    if not is_prime(p):
        raise ValueError(f"exponent {p} is not prime")
    if decagonal(n) != y**p:
        raise ValueError(f"n(4n-3) != y^p for n={n}, y={y}, p={p}")
    case = classify_case(n)
    m = 4 * n - 3
    if case is Case.CASE1:
        w = DescentWitness(p, case, _exact_root(n, p, "n"), _exact_root(m, p, "4n-3"))
    elif p == 2:
        # (2t-u)(2t+u) = 1 and (2v-w)(2v+w) = 1 have no integer solutions
        raise DescentError(f"p = 2 admits no {case.name} solutions, got n={n}")
    elif case is Case.CASE2:
        w = DescentWitness(
            p, case, _exact_root(n // 3, p, "n/3"), _exact_root(_exact_div(m, 3 ** (p - 1)), p, "(4n-3)/3^(p-1)")
        )
    else:
        w = DescentWitness(
            p, case, _exact_root(_exact_div(n, 3 ** (p - 1)), p, "n/3^(p-1)"), _exact_root(_exact_div(m, 3), p, "(4n-3)/3")
        )
    # even p: roots are only determined up to sign; match y
    if p % 2 == 0 and w.y() != y:
        w = DescentWitness(p, case, w.first, -w.second)
    bad = w.violations()
    if bad or w.y() != y:
        raise DescentError(f"witness {w} for n={n}, y={y} violates: {bad or ['y mismatch']}")
    return w


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise DescentError(f"{b} does not divide {a}")
    return q


def thue_instances(p: int) -> list[ThueInstance]:
    """The three binary form equations for exponent ``p`` in {3, 5}."""
    if p not in (3, 5):
        raise ValueError("Thue instances exist for p = 3, 5 only")
    k = 3 ** (p - 2)
    return [
        ThueInstance(4, -1, 3, p, Case.CASE1, p),
        ThueInstance(4, -k, 1, p, Case.CASE2, p),
        ThueInstance(4 * k, -1, 1, p, Case.CASE3, p),
    ]


def solve_p2(case: Case) -> list[tuple[int, int]]:
    """Integer solutions of the p = 2 factorizations.

    case 1: (2a - b)(2a + b) = 3; cases 2, 3: (2x - z)(2x + z) = 1.
    """
    target = 3 if case is Case.CASE1 else 1
    out = []
    for d1, d2 in divisor_pairs(target):
        # 2x - z = d1, 2x + z = d2
        if (d1 + d2) % 4 == 0 and (d2 - d1) % 2 == 0:
            out.append(((d1 + d2) // 4, (d2 - d1) // 2))
    return sorted(out)


# ---------------------------------------------------------------- oracle

_BLOCK = 1 << 17
_INT64_SAFE = 1 << 62


@lru_cache(maxsize=None)
def _residue_tables(p: int) -> tuple[tuple[int, np.ndarray], ...]:
    """Moduli with lookup tables of p-th power residues."""
    if p == 2:
        moduli = [64, 63, 65, 11]
    else:
        moduli = []
        q = p + 1
        while len(moduli) < 4:
            if q % p == 1 and is_prime(q):
                moduli.append(q)
            q += p
    out = []
    for q in moduli:
        table = np.zeros(q, dtype=bool)
        table[[pow(x, p, q) for x in range(q)]] = True
        out.append((q, table))
    return tuple(out)


def _candidate_mask(N: np.ndarray, maxM: int) -> np.ndarray:
    """False only where N is provably not a perfect m-th power, 2 <= m <= maxM.

    It suffices to test prime exponents up to log2(max |N|); 0 and 1 pass
    every table.
    """
    A = np.abs(N)
    top = int(A.max()) if A.size else 0
    mask = np.zeros(A.shape, dtype=bool)
    for p in primes_up_to(min(maxM, max(top.bit_length(), 2))):
        pm = np.ones(A.shape, dtype=bool)
        for q, table in _residue_tables(p):
            pm &= table[A % q]
        mask |= pm
    return mask


def _solutions_for(n: int, maxM: int) -> list[EquationSolution]:
    out = []
    for y, m in perfect_power_exponents(decagonal(n), maxM):
        out.append(EquationSolution(n, y, m))
        if m % 2 == 0 and y != 0:
            out.append(EquationSolution(n, -y, m))
    return out


def _scan_block(lo: int, hi: int, maxM: int, use_filter: bool) -> list[EquationSolution]:
    """Solutions with lo <= n < hi."""
    if use_filter:
        ns = np.arange(lo, hi, dtype=np.int64)
        N = ns * (4 * ns - 3)
        candidates = (int(n) for n in ns[_candidate_mask(N, maxM)])
    else:
        candidates = range(lo, hi)
    out = []
    for n in candidates:
        out.extend(_solutions_for(n, maxM))
    return out


def _sort_key(s: EquationSolution):
    return (s.n, s.m, -s.y)


def enumerate_solutions(
    maxAbsN: int, maxM: int, workers: int = 1, use_filter: bool = True
) -> list[EquationSolution]:
    """Every ``(n, y, m)`` with ``|n| <= maxAbsN``, ``2 <= m <= maxM`` and
    ``P10(n) = y**m``, sorted by ``(n, m)``.

    A residue sieve rejects most n before any root is extracted; the result
    is identical with ``use_filter=False``.  ``workers > 1`` splits the
    n-range across processes.
    """
    if maxAbsN < 0 or maxM < 2:
        raise ValueError("need maxAbsN >= 0 and maxM >= 2")
    if use_filter and 4 * maxAbsN * maxAbsN + 3 * maxAbsN >= _INT64_SAFE:
        raise ValueError("window too large for the int64 sieve; pass use_filter=False")
    blocks = [(lo, min(lo + _BLOCK, maxAbsN + 1)) for lo in range(-maxAbsN, maxAbsN + 1, _BLOCK)]
    args = [(lo, hi, maxM, use_filter) for lo, hi in blocks]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_block, *zip(*args)))
    else:
        parts = [_scan_block(*a) for a in args]
    return sorted((s for part in parts for s in part), key=_sort_key)
