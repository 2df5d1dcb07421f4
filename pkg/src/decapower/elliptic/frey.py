"""Frey curves attached to the three ternary equations (p >= 7).

    case 1, a = 1 mod 4:  E1  y^2 = x^3 - 3x^2 + 3a^p x
    case 1, a = 3 mod 4:  E2  y^2 = x^3 + 3x^2 + 3a^p x
    case 1, a even:       E3  y^2 + xy = x^3 - x^2 + (3a^p/16) x
    case 2:               E4  y^2 + 3xy - 3^(p-2) u^p y = x^3
    case 3:               E5  y^2 + 3xy + 4 3^(p-2) v^p y = x^3

The curves only depend on one member of the witness pair, and they are
built for hypothetical solutions too, so the ternary equation itself is not
checked here.
"""
from __future__ import annotations

import math

from ..descent import Case, DescentWitness
from .curve import WeierstrassModel

FREY_LABELS = ("E1", "E2", "E3", "E4", "E5")


def frey_model(label: str, param: int, p: int) -> WeierstrassModel:
    """Frey curve ``label`` for parameter a (E1-E3), u (E4) or v (E5)."""
    if p < 7:
        raise ValueError("Frey curves are used for p >= 7 only")
    if label == "E1":
        return WeierstrassModel(0, -3, 0, 3 * param**p, 0)
    if label == "E2":
        return WeierstrassModel(0, 3, 0, 3 * param**p, 0)
    if label == "E3":
        q, r = divmod(3 * param**p, 16)
        assert r == 0, "16 | 3a^p fails for even a and p >= 7"
        return WeierstrassModel(1, -1, 0, q, 0)
    if label == "E4":
        return WeierstrassModel(3, 0, -(3 ** (p - 2)) * param**p, 0, 0)
    if label == "E5":
        return WeierstrassModel(3, 0, 4 * 3 ** (p - 2) * param**p, 0, 0)
    raise ValueError(f"unknown Frey curve {label!r}")


def frey_label(witness: DescentWitness) -> str:
    if witness.case is Case.CASE2:
        return "E4"
    if witness.case is Case.CASE3:
        return "E5"
    a = witness.first
    if a % 2 == 0:
        return "E3"
    return "E1" if a % 4 == 1 else "E2"


def frey_curve(witness: DescentWitness, p: int) -> tuple[WeierstrassModel, str]:
    if p < 7:
        raise ValueError("Frey curves are used for p >= 7 only")
    if math.gcd(witness.first, witness.second) != 1:
        raise ValueError("witness pair must be coprime")
    label = frey_label(witness)
    return frey_model(label, witness.first, p), label
