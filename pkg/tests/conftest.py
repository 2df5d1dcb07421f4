import math
from fractions import Fraction

import pytest

from decapower.elliptic.curve import WeierstrassModel

# components of the special fibre by Kodaira symbol, for Ogg's formula
_COMPONENTS = {"I0": 1, "II": 1, "III": 2, "IV": 3, "I0*": 5, "IV*": 7, "III*": 8, "II*": 9}


def fibre_components(symbol: str) -> int:
    if symbol in _COMPONENTS:
        return _COMPONENTS[symbol]
    if symbol.endswith("*"):
        return int(symbol[1:-1]) + 5
    return int(symbol[1:])


def naive_affine_count(model: WeierstrassModel, q: int) -> int:
    a1, a2, a3, a4, a6 = model.ainvs
    return sum(
        1
        for x in range(q)
        for y in range(q)
        if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % q == 0
    )


def naive_points_up_to(model: WeierstrassModel, H: int, ymax: int) -> set:
    """Affine points with x = r/e^2, |r| <= H, e <= ceil(sqrt H), by scanning numerators of y."""
    a1, a2, a3, a4, a6 = model.ainvs
    emax = math.isqrt(H)
    if emax * emax < H:
        emax += 1
    out = set()
    for e in range(1, emax + 1):
        for r in range(-H, H + 1):
            if math.gcd(r, e) != 1:
                continue
            rhs = r**3 + a2 * r * r * e**2 + a4 * r * e**4 + a6 * e**6
            for Y in range(-ymax, ymax + 1):
                if Y * Y + a1 * r * e * Y + a3 * e**3 * Y == rhs:
                    out.add((Fraction(r, e * e), Fraction(Y, e**3)))
    return out


@pytest.fixture
def cm_curve():
    return WeierstrassModel(0, 0, 0, 0, 1)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
