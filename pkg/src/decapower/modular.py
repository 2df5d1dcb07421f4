"""Modular-method bookkeeping: newform dimensions, the level recipe, CM
detection, trace congruences, the inertia obstruction and rank evidence.

Newforms of weight 2 with rational coefficients are handled through
elliptic-curve proxies found by conductor search; every check is exact
arithmetic on those proxies.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .arith import divisors, is_prime, kronecker, prime_factors, valuation
from .elliptic.counting import count_points, torsion_bound
from .elliptic.curve import WeierstrassModel, invariants, quadratic_twist
from .elliptic.frey import frey_model
from .elliptic.minimal import minimal_model
from .elliptic.search import RationalPoint, non_torsion, search_points
from .elliptic.tate import LocalData, Reduction, conductor, tate


# ------------------------------------------------------------ dimensions

@dataclass(frozen=True)
class Gamma0Data:
    N: int
    mu: int
    nu2: int
    nu3: int
    nuInf: int
    genus: int


def _phi(n: int) -> int:
    out = n
    for q in prime_factors(n) if n > 1 else []:
        out -= out // q
    return out


def _genus(N, mu, nu2, nu3, nuinf) -> int:
    g = 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(nuinf, 2)
    if g.denominator != 1 or g < 0:
        raise ArithmeticError(f"genus formula gave {g} at N={N}")
    return int(g)


def gamma0_genus(N: int) -> Gamma0Data:
    """Index, elliptic points, cusps and genus of X0(N) from the product formulas."""
    if N < 1:
        raise ValueError("level must be positive")
    ps = prime_factors(N) if N > 1 else []
    mu = N
    for q in ps:
        mu = mu // q * (q + 1)
    nu2 = 0 if N % 4 == 0 else math.prod(1 + kronecker(-4, q) for q in ps)
    nu3 = 0 if N % 9 == 0 else math.prod(1 + kronecker(-3, q) for q in ps)
    nuinf = sum(_phi(math.gcd(d, N // d)) for d in divisors(N))
    return Gamma0Data(N, mu, nu2, nu3, nuinf, _genus(N, mu, nu2, nu3, nuinf))


def gamma0_genus_enumerated(N: int) -> Gamma0Data:
    """Same data by direct counting over Z/NZ; the independent path."""
    if N < 1:
        raise ValueError("level must be positive")
    units = sum(1 for a in range(N) if math.gcd(a, N) == 1)
    pairs = sum(1 for c in range(N) for d in range(N) if math.gcd(math.gcd(c, d), N) == 1)
    mu = pairs // units
    nu2 = 0 if N % 4 == 0 else sum(1 for x in range(N) if (x * x + 1) % N == 0)
    nu3 = 0 if N % 9 == 0 else sum(1 for x in range(N) if (x * x + x + 1) % N == 0)
    nuinf = 0
    for c in range(1, N + 1):
        if N % c == 0:
            g = math.gcd(c, N // c)
            nuinf += sum(1 for a in range(g) if math.gcd(a, g) == 1)
    return Gamma0Data(N, mu, nu2, nu3, nuinf, _genus(N, mu, nu2, nu3, nuinf))


@dataclass(frozen=True)
class NewformSpaceDim:
    N: int
    dimTotal: int
    dimNew: int


@lru_cache(maxsize=None)
def _dim_new(N: int) -> int:
    total = gamma0_genus(N).genus
    for M in divisors(N):
        if M < N:
            total -= len(divisors(N // M)) * _dim_new(M)
    return total


def dim_s2_new(N: int) -> NewformSpaceDim:
    """Dimension of the weight-2 new subspace at level N.

    Uses dim S2(N) = sum over M | N of sigma0(N/M) * dimNew(M).
    """
    if N < 1:
        raise ValueError("level must be positive")
    d = _dim_new(N)
    if d < 0:
        raise ArithmeticError(f"negative new dimension at N={N}")
    return NewformSpaceDim(N, gamma0_genus(N).genus, d)


# ------------------------------------------------------------ level recipe

@dataclass(frozen=True)
class LevelLoweringResult:
    N: int
    p: int
    Np: int
    removedPrimes: tuple[int, ...]


def predicted_level(localData: Sequence[LocalData], N: int, p: int) -> LevelLoweringResult:
    """Drop every q with ``q || N`` and ``p | ord_q(Dmin)``."""
    removed = []
    Np = N
    for ld in localData:
        if ld.v_q_N == 1:
            if ld.v_q_Dmin == 0:
                raise ValueError(f"inconsistent local data at {ld.q}: q || N but q does not divide Dmin")
            if ld.v_q_Dmin % p == 0:
                removed.append(ld.q)
                Np //= ld.q
    return LevelLoweringResult(N, p, Np, tuple(removed))


# Parameter samples for the Frey curves: a for E1-E3, u for E4, v for E5.
# Each satisfies the case's congruence conditions, avoids the trivial
# solution, and lets the ternary equation be solved 2- and 3-adically.
def _frey_samples(label: str, p: int, count: int) -> list[int]:
    out = []
    x = 2
    while len(out) < count:
        for c in (x, -x):
            if label == "E1" and c % 4 == 1 and c % 3:
                out.append(c)
            elif label == "E2" and c % 4 == 3 and c % 3:
                out.append(c)
            elif label == "E3" and c % 2 == 0 and c % 3:
                out.append(c)
            elif label == "E4" and (1 + 3 ** (p - 2) * c**p) % 8 == 4:
                out.append(c)
            elif label == "E5":
                out.append(c)
        x += 1
    return out[:count]


@dataclass(frozen=True)
class FreyLevelProfile:
    label: str
    p: int
    samples: tuple[int, ...]
    levels: tuple[int, ...]
    multiplicative_away_from_6: bool

    @property
    def level(self) -> Optional[int]:
        return self.levels[0] if len(set(self.levels)) == 1 else None


def frey_level_profile(label: str, p: int, count: int = 6) -> FreyLevelProfile:
    """Level predicted for a hypothetical solution landing on ``label``.

    Primes other than 2 and 3 drop out on any genuine solution: the
    discriminant's cofactor there is a p-th power, and reduction is
    multiplicative because c4 and the discriminant share only 2s and 3s
    (checked on each sample).  The 2- and 3-parts depend only on the Frey
    parameter, so they are computed by Tate's algorithm on sample
    parameters.
    """
    levels = []
    mult = True
    samples = _frey_samples(label, p, count)
    for c in samples:
        model = frey_model(label, c, p)
        mm = minimal_model(model)
        g = math.gcd(mm.c_invariants()[0], mm.discriminant())
        for q in (2, 3):
            while g % q == 0:
                g //= q
        mult &= g == 1
        local = [tate(mm, q)[0] for q in (2, 3) if mm.discriminant() % q == 0]
        N23 = math.prod(ld.q**ld.v_q_N for ld in local)
        levels.append(predicted_level(local, N23, p).Np)
    return FreyLevelProfile(label, p, tuple(samples), tuple(levels), mult)


# ------------------------------------------------------------ traces

def _traces_mod(model: WeierstrassModel, primes: Sequence[int]) -> dict[int, int]:
    mm = minimal_model(model)
    return {q: q + 1 - count_points(mm, q) for q in primes}


@dataclass(frozen=True)
class CmCheckReport:
    D: int
    bound: int
    inertPrimesChecked: int
    allTracesZero: bool
    firstFailure: Optional[tuple[int, int]] = None


def cm_heuristic(model: WeierstrassModel, D: int, bound: int) -> CmCheckReport:
    """Check ``a_q = 0`` at every good prime ``q <= bound`` inert in Q(sqrt D)."""
    disc = minimal_model(model).discriminant()
    inert = [q for q in range(2, bound + 1) if is_prime(q) and disc % q and kronecker(D, q) == -1]
    traces = _traces_mod(model, inert)
    bad = [(q, a) for q, a in traces.items() if a != 0]
    return CmCheckReport(D, bound, len(inert), not bad, bad[0] if bad else None)


@dataclass(frozen=True)
class CongruenceReport:
    p: int
    primesCompared: tuple[int, ...]
    allCongruent: bool
    firstFailure: Optional[tuple[int, int, int]] = None


def congruent_mod_p(modelE: WeierstrassModel, modelF: WeierstrassModel, p: int, bound: int) -> CongruenceReport:
    """Compare ``a_q(E)`` and ``a_q(F)`` mod p at shared good primes q != p."""
    dE = minimal_model(modelE).discriminant()
    dF = minimal_model(modelF).discriminant()
    primes = [q for q in range(2, bound + 1) if is_prime(q) and q != p and dE % q and dF % q]
    tE, tF = _traces_mod(modelE, primes), _traces_mod(modelF, primes)
    fail = next(((q, tE[q], tF[q]) for q in primes if (tE[q] - tF[q]) % p), None)
    return CongruenceReport(p, tuple(primes), fail is None, fail)


def inertia_obstruction(vqjE: int, vqjF: int, p: int) -> bool:
    """True when inertia at q acts incompatibly on E[p] and F[p].

    F has potentially multiplicative reduction with ``p`` not dividing
    ``ord_q(j_F)``, so inertia acts on F[p] through an element of order p;
    E is potentially good at q or has ``p | ord_q(j_E)``, so it does not.
    """
    if p < 7:
        raise ValueError("inertia argument is used for p >= 7")
    return vqjF < 0 and vqjF % p != 0 and (vqjE >= 0 or vqjE % p == 0)


def j_valuation(model: WeierstrassModel, q: int) -> int:
    j = invariants(model).j
    if j == 0:
        return 10**9
    return valuation(j.numerator, q) - valuation(j.denominator, q)


# ------------------------------------------------------------ rank evidence

@dataclass
class RankEvidence:
    curve: WeierstrassModel
    twist: WeierstrassModel
    d: int
    heightBound: int
    torsionBoundCurve: int
    torsionBoundTwist: int
    curvePoints: list[RationalPoint] = field(default_factory=list)
    twistPoints: list[RationalPoint] = field(default_factory=list)

    @property
    def positive(self) -> bool:
        """A non-torsion point was found on the curve or on its twist."""
        return bool(self.curvePoints or self.twistPoints)


def positive_rank_evidence(
    model: WeierstrassModel, d: int, heightBound: int, torsionSamples: int = 20
) -> RankEvidence:
    """Search for non-torsion points on E and on its d-twist.

    The rank of E over Q(sqrt d) is the sum of the ranks of E and E^d over
    Q, so a point on either witnesses positive rank.  Finding nothing is
    evidence only.
    """
    if heightBound < 10:
        raise ValueError("height bound must be at least 10")
    E = minimal_model(model)
    Ed = minimal_model(quadratic_twist(E, d))
    ev = RankEvidence(E, Ed, d, heightBound, torsion_bound(E, torsionSamples), torsion_bound(Ed, torsionSamples))
    ev.curvePoints = non_torsion(search_points(E, heightBound, torsionSamples))
    if Ed != E:
        ev.twistPoints = non_torsion(search_points(Ed, heightBound, torsionSamples))
    return ev
