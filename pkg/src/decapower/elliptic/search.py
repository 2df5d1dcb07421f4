"""Rational point search and curve discovery by conductor.

Both searches use the same trick: a vectorized residue sieve throws away
candidates that are not squares modulo a handful of small moduli, and only
the survivors get an exact integer square-root test.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..arith import iroot, prime_factors
from .counting import torsion_bound
from .curve import Point, WeierstrassModel, multiply
from .minimal import minimal_model
from .tate import conductor

_SIEVE_MODULI = (64, 63, 65, 11, 13, 17, 19, 23, 29, 31, 37, 41)
B2_CAP = 10**4


@lru_cache(maxsize=None)
def _is_square_mod(m: int) -> np.ndarray:
    t = np.zeros(m, dtype=bool)
    t[[x * x % m for x in range(m)]] = True
    return t


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction
    y: Fraction
    torsion: bool

    def naive_height(self) -> int:
        return max(abs(self.x.numerator), self.x.denominator)


def _poly_mod(coeffs, X: np.ndarray, m: int) -> np.ndarray:
    """Horner evaluation of an integer polynomial mod m, coefficients high first."""
    acc = np.zeros_like(X)
    for c in coeffs:
        acc = (acc * X + c % m) % m
    return acc


def search_points(model: WeierstrassModel, heightBound: int, torsionSamples: int = 20) -> list[RationalPoint]:
    """Affine rational points with ``x = r/e^2``, ``|r| <= H``, ``e <= ceil(sqrt(H))``.

    Points are flagged as torsion when ``T * P = O`` for the torsion bound T.
    """
    if heightBound < 1:
        raise ValueError("height bound must be at least 1")
    a1, a2, a3, a4, a6 = model.ainvs
    H = heightBound
    emax = iroot(H, 2)[0]
    if emax * emax < H:
        emax += 1
    rs = np.arange(-H, H + 1, dtype=np.int64)
    found: set[tuple[Fraction, Fraction]] = set()
    for e in range(1, emax + 1):
        # D(r) = (a1 r e + a3 e^3)^2 + 4 (r^3 + a2 e^2 r^2 + a4 e^4 r + a6 e^6)
        keep = np.gcd(rs, e) == 1
        for m in _SIEVE_MODULI:
            R = rs % m
            lin = (a1 * e % m * R + a3 * e**3 % m) % m
            cub = _poly_mod((1, a2 * e * e, a4 * e**4, a6 * e**6), R, m)
            keep &= _is_square_mod(m)[(lin * lin + 4 * cub) % m]
        for r in rs[keep].tolist():
            lin = a1 * r * e + a3 * e**3
            D = lin * lin + 4 * (r**3 + a2 * e * e * r * r + a4 * e**4 * r + a6 * e**6)
            if D < 0:
                continue
            s, exact = iroot(D, 2)
            if not exact:
                continue
            x = Fraction(r, e * e)
            for Y in {(-lin + s) // 2, (-lin - s) // 2}:
                found.add((x, Fraction(Y, e**3)))
    T = torsion_bound(model, torsionSamples)
    out = []
    for x, y in found:
        assert model.contains((x, y))
        out.append(RationalPoint(x, y, multiply(model, T, (x, y)) is None))
    out.sort(key=lambda P: (P.naive_height(), P.x, P.y))
    return out


def non_torsion(points: list[RationalPoint]) -> list[RationalPoint]:
    return [P for P in points if not P.torsion]


# ----------------------------------------------------- curves by conductor

def _s_units(primes: list[int], bound: int) -> np.ndarray:
    vals = [1]
    for q in primes:
        nxt = []
        for v in vals:
            while v <= bound:
                nxt.append(v)
                v *= q
        vals = nxt
    vals = sorted(set(vals))
    return np.array(vals + [-v for v in vals], dtype=np.int64)


def _is_s_unit(n: int, primes: list[int]) -> bool:
    if n == 0:
        return False
    n = abs(n)
    for q in primes:
        while n % q == 0:
            n //= q
    return n == 1


def coefficient_box(coeffBound: int) -> int:
    return min(coeffBound**3, B2_CAP)


def find_curves_by_conductor(N: int, coeffBound: int, _chunk: int = 64) -> list[WeierstrassModel]:
    """Minimal models of every Q-isomorphism class of conductor ``N`` that
    has a reduced model in the coefficient box.

    Reduced means ``a1, a3 in {0, 1}``, ``a2 in {-1, 0, 1}``; each class has
    exactly one reduced minimal model, so clipping a1, a2, a3 to those sets
    loses nothing.  ``a4`` and ``a6`` range over ``[-B, B]`` with
    ``B = min(coeffBound**3, 10**4)``.  For fixed ``a1..a4`` the
    discriminant is a quadratic in ``a6``, so instead of scanning a6 we solve
    ``disc(a6) = D0`` for every S-unit ``D0`` in range (S = primes of N).
    Curves whose box model is non-minimal at a prime outside S are missed.
    Results are sorted by ``(c4, c6)``.
    """
    if N < 1 or coeffBound < 1:
        raise ValueError("need N >= 1 and coeffBound >= 1")
    S = prime_factors(N) if N > 1 else []
    B = coefficient_box(coeffBound)
    lo = min(1, coeffBound)
    a4 = np.arange(-B, B + 1, dtype=np.int64)
    classes: dict[tuple[int, int], WeierstrassModel] = {}
    for a1 in range(0, lo + 1):
        for a3 in range(0, lo + 1):
            for a2 in range(-lo, lo + 1):
                b2 = a1 * a1 + 4 * a2
                b4 = 2 * a4 + a1 * a3
                k = -a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
                beta = -(b2**3) - 216 * a3 * a3 + 36 * b2 * b4
                gamma = -b2 * b2 * k - 8 * b4**3 - 27 * a3**4 + 9 * b2 * b4 * a3 * a3
                dmax = int(432 * B * B + np.abs(beta).max() * B + np.abs(gamma).max())
                targets = _s_units(S, dmax)
                for i in range(0, len(targets), _chunk):
                    D0 = targets[i : i + _chunk][None, :]
                    disc = (beta * beta)[:, None] + 1728 * (gamma[:, None] - D0)
                    ok = disc >= 0
                    s = np.sqrt(np.where(ok, disc, 0).astype(np.float64)).astype(np.int64)
                    for ds in (-1, 0, 1):
                        s2 = s + ds
                        hit = ok & (s2 >= 0) & (s2 * s2 == disc)
                        rows, _ = np.nonzero(hit)
                        for row, sv in zip(rows.tolist(), s2[hit].tolist()):
                            for num in (int(beta[row]) - sv, int(beta[row]) + sv):
                                if num % 864 == 0 and abs(num // 864) <= B:
                                    _accept(WeierstrassModel(a1, a2, a3, int(a4[row]), num // 864), N, S, classes)
    return [classes[k] for k in sorted(classes)]


def _accept(model, N, S, classes) -> None:
    disc = model.discriminant()
    if not _is_s_unit(disc, S):
        return
    mm = minimal_model(model)
    key = mm.c_invariants()
    if key in classes:
        return
    if conductor(mm)[0] == N:
        classes[key] = mm
