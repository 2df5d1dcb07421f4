"""Tate's algorithm: Kodaira type, conductor exponent and reduction type."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from ..arith import prime_factors, valuation
from .curve import SingularCurveError, WeierstrassModel, transform
from .minimal import minimal_model


class Reduction(str, enum.Enum):
    GOOD = "good"
    SPLIT = "multiplicative-split"
    NONSPLIT = "multiplicative-nonsplit"
    ADDITIVE = "additive"


@dataclass(frozen=True)
class LocalData:
    q: int
    v_q_N: int
    v_q_Dmin: int
    kodaira: str
    reduction: Reduction


def _v(n: int, p: int) -> int:
    return 10**9 if n == 0 else valuation(n, p)


def _has_root_mod(a: int, b: int, c: int, p: int) -> bool:
    """Does ``a T^2 + b T + c`` have a root mod p (a not divisible by p)?"""
    if p == 2:
        return any((a * t * t + b * t + c) % 2 == 0 for t in (0, 1))
    disc = (b * b - 4 * a * c) % p
    return disc == 0 or pow(disc, (p - 1) // 2, p) == 1


def _scale_down(m: WeierstrassModel, p: int) -> WeierstrassModel:
    a1, a2, a3, a4, a6 = m.ainvs
    return WeierstrassModel(a1 // p, a2 // p**2, a3 // p**3, a4 // p**4, a6 // p**6)


def tate(model: WeierstrassModel, p: int) -> tuple[LocalData, int]:
    """Run Tate's algorithm at ``p``.

    Returns the local data and the number of times the model had to be
    scaled down by ``p`` (zero on a model minimal at ``p``).
    """
    if model.is_singular():
        raise SingularCurveError(f"singular model {model}")
    m = model
    rescaled = 0
    while True:
        a1, a2, a3, a4, a6 = m.ainvs
        b2, b4, b6, b8 = m.b_invariants()
        c4, c6 = m.c_invariants()
        n = _v(m.discriminant(), p)
        if n == 0:
            return LocalData(p, 0, 0, "I0", Reduction.GOOD), rescaled

        # move the singular point of the reduction to (0, 0)
        if p == 2:
            if b2 % 2 == 0:
                r = a4 % 2
                t = (r * (1 + a2 + a4) + a6) % 2
            else:
                r = a3 % 2
                t = (r + a4) % 2
        elif p == 3:
            r = -b6 % 3 if b2 % 3 == 0 else -b2 * b4 % 3
            t = (a1 * r + a3) % 3
        else:
            if c4 % p == 0:
                r = -pow(12, -1, p) * b2 % p
            else:
                r = -pow(12 * c4, -1, p) * (c6 + b2 * c4) % p
            t = -pow(2, -1, p) * (a1 * r + a3) % p
        m = transform(m, r, 0, t)
        a1, a2, a3, a4, a6 = m.ainvs
        b2, b4, b6, b8 = m.b_invariants()
        assert a3 % p == 0 and a4 % p == 0 and a6 % p == 0

        if b2 % p:
            split = _has_root_mod(1, a1, -a2, p)
            red = Reduction.SPLIT if split else Reduction.NONSPLIT
            return LocalData(p, 1, n, f"I{n}", red), rescaled

        def additive(f: int, kod: str) -> tuple[LocalData, int]:
            return LocalData(p, f, n, kod, Reduction.ADDITIVE), rescaled

        if _v(a6, p) < 2:
            return additive(n, "II")
        if _v(b8, p) < 3:
            return additive(n - 1, "III")
        if _v(b6, p) < 3:
            return additive(n - 2, "IV")

        # arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
        if p == 2:
            s = a2 % 2
            t = 2 * ((a6 // 4) % 2)
        else:
            half = pow(2, -1, p)
            s = -a1 * half
            t = -a3 * half
        m = transform(m, 0, s, t)
        a1, a2, a3, a4, a6 = m.ainvs
        pp = p * p
        b, c, d = a2 // p, a4 // pp, a6 // (pp * p)
        w = 27 * d * d - b * b * c * c + 4 * b**3 * d - 18 * b * c * d + 4 * c**3
        x = 3 * c - b * b

        if w % p:
            return additive(n - 4, "I0*")

        if x % p:
            # double root; move it to T = 0
            if p == 2:
                r = c
            elif p == 3:
                r = b * c
            else:
                r = (b * c - 9 * d) * pow(2 * x, -1, p)
            m = transform(m, p * (r % p), 0, 0)
            ix = iy = 3
            mx = my = pp
            while True:
                a1, a2, a3, a4, a6 = m.ainvs
                xa3, xa6 = a3 // my, a6 // (mx * my)
                if (xa3 * xa3 + 4 * xa6) % p:
                    break
                t = my * xa6 if p == 2 else my * (-xa3 * pow(2, -1, p) % p)
                m = transform(m, 0, 0, t)
                my *= p
                iy += 1
                a1, a2, a3, a4, a6 = m.ainvs
                xa2, xa4, xa6 = a2 // p, a4 // (p * mx), a6 // (mx * my)
                if (xa4 * xa4 - 4 * xa2 * xa6) % p:
                    break
                r = mx * (xa6 * xa2 % 2) if p == 2 else mx * (-xa4 * pow(2 * xa2, -1, p) % p)
                m = transform(m, r, 0, 0)
                mx *= p
                ix += 1
            k = ix + iy - 5
            return additive(n - k - 4, f"I{k}*")

        # triple root; move it to T = 0
        if p == 2:
            rp = b
        elif p == 3:
            rp = -d
        else:
            rp = -b * pow(3, -1, p)
        m = transform(m, p * (rp % p), 0, 0)
        a1, a2, a3, a4, a6 = m.ainvs
        x3, x6 = a3 // pp, a6 // (pp * pp)
        if (x3 * x3 + 4 * x6) % p:
            return additive(n - 6, "IV*")
        t = x6 if p == 2 else x3 * pow(2, -1, p)
        m = transform(m, 0, 0, -pp * (t % p))
        a1, a2, a3, a4, a6 = m.ainvs
        if _v(a4, p) < 4:
            return additive(n - 7, "III*")
        if _v(a6, p) < 6:
            return additive(n - 8, "II*")
        m = _scale_down(m, p)
        rescaled += 1


def conductor(model: WeierstrassModel) -> tuple[int, list[LocalData], int]:
    """``(N, local data at each bad prime, minimal discriminant)``."""
    mm = minimal_model(model)
    dmin = mm.discriminant()
    N = 1
    local = []
    for p in prime_factors(dmin):
        ld, rescaled = tate(mm, p)
        if rescaled:
            raise AssertionError(f"minimal model {mm} is not minimal at {p}")
        N *= p**ld.v_q_N
        local.append(ld)
    return N, local, dmin
