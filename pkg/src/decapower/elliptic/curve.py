"""Integral Weierstrass models, their invariants and the group law."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from ..arith import is_squarefree

Point = Optional[Tuple[Fraction, Fraction]]  # None is the point at infinity


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassModel:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` over Z."""

    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0

    @classmethod
    def from_list(cls, ainvs) -> "WeierstrassModel":
        ainvs = [int(a) for a in ainvs]
        if len(ainvs) == 2:
            return cls(0, 0, 0, *ainvs)
        if len(ainvs) != 5:
            raise ValueError("need 2 or 5 a-invariants")
        return cls(*ainvs)

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c_invariants(self) -> tuple[int, int]:
        b2, b4, b6, _ = self.b_invariants()
        return b2 * b2 - 24 * b4, -(b2**3) + 36 * b2 * b4 - 216 * b6

    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def is_singular(self) -> bool:
        return self.discriminant() == 0

    def contains(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.ainvs) + "]"


@dataclass(frozen=True)
class CurveInvariants:
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    disc: int
    j: Fraction


def invariants(model: WeierstrassModel) -> CurveInvariants:
    b2, b4, b6, b8 = model.b_invariants()
    c4, c6 = model.c_invariants()
    disc = model.discriminant()
    if disc == 0:
        raise SingularCurveError(f"singular model {model}")
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, Fraction(c4**3, disc))


def transform(model: WeierstrassModel, r: int = 0, s: int = 0, t: int = 0) -> WeierstrassModel:
    """Substitute ``x = x' + r``, ``y = y' + s x' + t`` (u = 1)."""
    a1, a2, a3, a4, a6 = model.ainvs
    return WeierstrassModel(
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1,
    )


def short_model(model: WeierstrassModel) -> tuple[int, int]:
    """``(A, B)`` with ``y^2 = x^3 + A x + B`` isomorphic over Q.

    Models already in short form are returned as they are; anything else
    goes through ``(-27 c4, -54 c6)``.
    """
    a1, a2, a3, a4, a6 = model.ainvs
    if a1 == a2 == a3 == 0:
        return a4, a6
    c4, c6 = model.c_invariants()
    return -27 * c4, -54 * c6


def quadratic_twist(model: WeierstrassModel, d: int) -> WeierstrassModel:
    if d == 0 or not is_squarefree(d):
        raise ValueError(f"twist parameter {d} must be a nonzero squarefree integer")
    A, B = short_model(model)
    return WeierstrassModel(0, 0, 0, A * d * d, B * d**3)


def two_torsion_x(model: WeierstrassModel) -> list[Fraction]:
    """x-coordinates of the rational points of order 2."""
    b2, b4, b6, _ = model.b_invariants()
    # 4x^3 + b2 x^2 + 2 b4 x + b6 = 0; with X = 4x the cubic
    # X^3 + b2 X^2 + 8 b4 X + 16 b6 is monic, so rational roots are integers
    coeffs = (1, b2, 8 * b4, 16 * b6)
    roots = _integer_roots(coeffs)
    return sorted(Fraction(X, 4) for X in roots)


def _integer_roots(coeffs: tuple[int, ...]) -> list[int]:
    """Integer roots of a monic integer polynomial, highest degree first.

    Floating-point roots only propose candidates; each one is confirmed by
    exact evaluation.
    """
    def ev(x: int) -> int:
        v = 0
        for c in coeffs:
            v = v * x + c
        return v

    found = set()
    for z in np.roots([float(c) for c in coeffs]):
        if abs(z.imag) > 1e-6 * max(1.0, abs(z.real)) + 0.5:
            continue
        base = int(round(z.real))
        for cand in (base - 1, base, base + 1):
            if ev(cand) == 0:
                found.add(cand)
    return sorted(found)


def has_full_two_torsion(model: WeierstrassModel) -> bool:
    return len(two_torsion_x(model)) == 3


# ------------------------------------------------------------ group law

def negate(model: WeierstrassModel, P: Point) -> Point:
    if P is None:
        return None
    x, y = P
    return (x, -y - model.a1 * x - model.a3)


def add(model: WeierstrassModel, P: Point, Q: Point) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = model.ainvs
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return None
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def multiply(model: WeierstrassModel, k: int, P: Point) -> Point:
    if k < 0:
        return multiply(model, -k, negate(model, P))
    R: Point = None
    while k:
        if k & 1:
            R = add(model, R, P)
        P = add(model, P, P)
        k >>= 1
    return R


def point_order(model: WeierstrassModel, P: Point, limit: int) -> int | None:
    """Order of ``P`` if it is at most ``limit``, else None."""
    Q = P
    for k in range(1, limit + 1):
        if Q is None:
            return k
        Q = add(model, Q, P)
    return None
