"""Naive point counting over F_q, traces of Frobenius and a torsion bound."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..arith import is_prime
from .curve import WeierstrassModel
from .minimal import minimal_model

MAX_Q = 10**6


class BadReductionError(ValueError):
    pass


@dataclass(frozen=True)
class FrobeniusTrace:
    q: int
    a_q: int


@lru_cache(maxsize=256)
def _square_table(q: int) -> np.ndarray:
    """``chi[x]`` = Legendre symbol of x mod q as int8 (odd q)."""
    chi = np.full(q, -1, dtype=np.int8)
    xs = np.arange(q, dtype=np.int64)
    chi[(xs * xs) % q] = 1
    chi[0] = 0
    return chi


def count_points(model: WeierstrassModel, q: int) -> int:
    """``#E(F_q)`` including infinity, for a model nonsingular mod q."""
    if not is_prime(q) or q > MAX_Q:
        raise ValueError(f"q={q} must be a prime <= {MAX_Q}")
    a1, a2, a3, a4, a6 = (a % q for a in model.ainvs)
    if q == 2:
        return 1 + sum(
            1
            for x in range(2)
            for y in range(2)
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0
        )
    b2, b4, b6, _ = (b % q for b in model.b_invariants())
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    x = np.arange(q, dtype=np.int64)
    f = (4 * x + b2) % q
    f = (f * x + 2 * b4) % q
    f = (f * x + b6) % q
    return int(q + 1 + _square_table(q)[f].sum(dtype=np.int64))


def trace_of_frobenius(model: WeierstrassModel, q: int) -> FrobeniusTrace:
    """``a_q = q + 1 - #E(F_q)`` on the minimal model; q must be good."""
    mm = minimal_model(model)
    if mm.discriminant() % q == 0:
        raise BadReductionError(f"{model} has bad reduction at {q}")
    return FrobeniusTrace(q, q + 1 - count_points(mm, q))


def bad_trace(model: WeierstrassModel, q: int) -> int:
    """``a_q`` at a bad prime: +1 split, -1 nonsplit, 0 additive."""
    from .tate import Reduction, tate

    ld, _ = tate(minimal_model(model), q)
    return {Reduction.SPLIT: 1, Reduction.NONSPLIT: -1}.get(ld.reduction, 0)


def good_primes(model: WeierstrassModel, start: int = 2):
    """Primes q >= start of good reduction, in increasing order."""
    disc = minimal_model(model).discriminant()
    q = start
    while True:
        if is_prime(q) and disc % q:
            yield q
        q += 1


def torsion_bound(model: WeierstrassModel, sampleCount: int = 20) -> int:
    """gcd of ``#E(F_q)`` over the first ``sampleCount`` good primes q > 3.

    The rational torsion subgroup injects into each E(F_q), so its order
    divides the result.
    """
    if sampleCount < 3:
        raise ValueError("need at least 3 sample primes")
    mm = minimal_model(model)
    g = 0
    for i, q in enumerate(good_primes(mm, 5)):
        if i == sampleCount:
            break
        g = math.gcd(g, count_points(mm, q))
    return g
