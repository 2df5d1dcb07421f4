"""Global minimal models over Q from ``(c4, c6)``.

Every pair ``(c4, c6)`` coming from an integral model has a unique
*reduced* integral model with ``a1, a3 in {0, 1}`` and ``a2 in {-1, 0, 1}``,
and that model exists exactly when the divisibilities in
:func:`model_from_c4c6` hold (Kraus' conditions in constructive form).  The
minimal model is obtained by removing the largest ``u`` with
``(c4/u^4, c6/u^6)`` still integral in that sense, one prime at a time.
"""
from __future__ import annotations

import math

from ..arith import iroot, primes_up_to, valuation
from .curve import SingularCurveError, WeierstrassModel


def model_from_c4c6(c4: int, c6: int) -> WeierstrassModel | None:
    """The reduced integral model with invariants ``(c4, c6)``, or None."""
    b2 = -c6 % 12
    if b2 > 6:
        b2 -= 12
    b4, r = divmod(b2 * b2 - c4, 24)
    if r:
        return None
    b6, r = divmod(-(b2**3) + 36 * b2 * b4 - c6, 216)
    if r:
        return None
    a1 = b2 % 2
    a2, r = divmod(b2 - a1, 4)
    if r:
        return None
    a3 = b6 % 2
    a4, r = divmod(b4 - a1 * a3, 2)
    if r:
        return None
    a6, r = divmod(b6 - a3, 4)
    if r:
        return None
    model = WeierstrassModel(a1, a2, a3, a4, a6)
    if model.c_invariants() != (c4, c6):
        return None
    return model


def _vmin(n: int, p: int, step: int) -> int:
    return 10**9 if n == 0 else valuation(n, p) // step


def minimal_model(model: WeierstrassModel) -> WeierstrassModel:
    """Reduced global minimal model of an integral model."""
    c4, c6 = model.c_invariants()
    disc = model.discriminant()
    if disc == 0:
        raise SingularCurveError(f"singular model {model}")
    # a removable p has p^4 | c4, p^6 | c6 and p^12 | disc
    g = math.gcd(math.gcd(c4, c6), disc)
    bound = iroot(abs(disc), 12)[0]
    if c4:
        bound = min(bound, iroot(abs(c4), 4)[0])
    if c6:
        bound = min(bound, iroot(abs(c6), 6)[0])
    for p in primes_up_to(bound):
        if g % p or disc % p**12:
            continue
        emax = min(_vmin(c4, p, 4), _vmin(c6, p, 6), valuation(disc, p) // 12)
        for e in range(emax, 0, -1):
            u = p**e
            if model_from_c4c6(c4 // u**4, c6 // u**6) is not None:
                c4, c6, disc = c4 // u**4, c6 // u**6, disc // u**12
                break
    out = model_from_c4c6(c4, c6)
    assert out is not None, "integral model lost during reduction"
    return out


def is_minimal(model: WeierstrassModel) -> bool:
    return minimal_model(model).discriminant() == model.discriminant()
