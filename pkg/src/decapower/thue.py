"""Bounded resolution of binary form equations ``c1 x**d + c2 y**d = c3``.

This reproduces fixed-degree Thue computations by exhaustive search in an
x-window; it certifies completeness inside the window only.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .arith import iroot
from .descent import ThueInstance

DEFAULT_BOUND = 10**4


@dataclass(frozen=True)
class ThueSolutionSet:
    instance: ThueInstance
    bound: int
    solutions: tuple[tuple[int, int], ...]


def _y_values(inst: ThueInstance, x: int) -> list[int]:
    rest = inst.c3 - inst.c1 * x**inst.d
    yd, r = divmod(rest, inst.c2)
    if r:
        return []
    if yd < 0 and inst.d % 2 == 0:
        return []
    y, exact = iroot(yd, inst.d)
    if not exact:
        return []
    if inst.d % 2 == 0 and y != 0:
        return [-y, y]
    return [y]


def _scan(inst: ThueInstance, lo: int, hi: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(lo, hi) for y in _y_values(inst, x)]


def solve_bounded(instance: ThueInstance, B: int = DEFAULT_BOUND, workers: int = 1) -> ThueSolutionSet:
    """All integer solutions with ``|x| <= B``, sorted.

    One exact root extraction per x, so the cost is linear in ``B``.
    """
    if B < 1:
        raise ValueError("bound must be at least 1")
    if instance.c2 == 0:
        raise ValueError("c2 must be nonzero")
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1:
        step = -(-(2 * B + 1) // workers)
        chunks = [(lo, min(lo + step, B + 1)) for lo in range(-B, B + 1, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_scan, [instance] * len(chunks), *zip(*chunks))
            sols = [s for part in parts for s in part]
    else:
        sols = _scan(instance, -B, B + 1)
    return ThueSolutionSet(instance, B, tuple(sorted(sols)))


def naive_solutions(instance: ThueInstance, bound: int) -> list[tuple[int, int]]:
    """Double loop over ``|x|, |y| <= bound``; the independent check."""
    r = range(-bound, bound + 1)
    return sorted((x, y) for x in r for y in r if instance.evaluate(x, y) == instance.c3)
