import math
from fractions import Fraction

import pytest
from conftest import fibre_components, naive_affine_count, naive_points_up_to
from hypothesis import assume, given, settings, strategies as st

from decapower.arith import is_prime, kronecker, primes_up_to
from decapower.descent import Case, DescentWitness
from decapower.elliptic.counting import (
    BadReductionError,
    bad_trace,
    count_points,
    torsion_bound,
    trace_of_frobenius,
)
from decapower.elliptic.curve import (
    SingularCurveError,
    WeierstrassModel,
    add,
    has_full_two_torsion,
    invariants,
    multiply,
    negate,
    quadratic_twist,
    transform,
    two_torsion_x,
)
from decapower.elliptic.frey import frey_curve, frey_model
from decapower.elliptic.minimal import is_minimal, minimal_model
from decapower.elliptic.search import find_curves_by_conductor, non_torsion, search_points
from decapower.elliptic.tate import Reduction, conductor, tate

W = WeierstrassModel.from_list
small = st.integers(min_value=-30, max_value=30)
models = st.builds(WeierstrassModel, small, small, small, small, small).filter(lambda m: not m.is_singular())


# ------------------------------------------------------------ invariants

@pytest.mark.parametrize("ainvs", [[0, -3, 0, 3, 0], [0, 0, 0, 0, 1]])
def test_invariants_cm_examples(ainvs):
    inv = invariants(W(ainvs))
    assert (inv.c4, inv.c6, inv.disc, inv.j) == (0, -864, -432, 0)


def test_invariants_hand_values():
    inv = invariants(W([1, 0, 1, 4, -6]))
    assert (inv.b2, inv.b4, inv.b6, inv.b8) == (1, 9, -23, -26)
    assert inv.disc == -21952  # -2^6 * 7^3


def test_singular_model():
    with pytest.raises(SingularCurveError):
        invariants(W([0, 0, 0, 0, 0]))
    with pytest.raises(SingularCurveError):
        conductor(W([0, 0, 0, -3, 2]))


@settings(max_examples=300)
@given(models)
def test_invariant_identities(m):
    inv = invariants(m)
    assert 4 * inv.b8 == inv.b2 * inv.b6 - inv.b4**2
    assert inv.c4**3 - inv.c6**2 == 1728 * inv.disc
    assert inv.j == Fraction(inv.c4**3, inv.disc)


@given(models, small, small, small)
def test_transform_preserves_c_invariants(m, r, s, t):
    m2 = transform(m, r, s, t)
    assert m2.c_invariants() == m.c_invariants()
    assert m2.discriminant() == m.discriminant()


# ------------------------------------------------------------ minimal models and Tate

def _scale_up(m, u):
    return WeierstrassModel(*(a * u**k for a, k in zip(m.ainvs, (1, 2, 3, 4, 6))))


@settings(max_examples=60, deadline=None)
@given(models, st.sampled_from([1, -1, 2, 3, 6, 5]), small, small, small)
def test_minimal_model_is_canonical(m, u, r, s, t):
    big = transform(_scale_up(m, u), r, s, t)
    assert minimal_model(big) == minimal_model(m)
    assert is_minimal(minimal_model(m))


@pytest.mark.parametrize(
    "ainvs, N",
    [
        ([0, 0, 0, 0, 1], 36),
        ([0, -3, 0, 3, 0], 36),
        ([1, 0, 1, 4, -6], 14),
        ([0, -1, 1, -10, -20], 11),
        ([0, 0, 1, -1, 0], 37),
        ([0, 0, 0, -1, 0], 32),
        ([0, 0, 0, 1, 0], 64),
        ([0, 0, 1, 0, -7], 27),
        ([1, 0, 1, -5, -8], 26),
        ([1, -1, 1, -3, 3], 26),
        ([0, -1, 0, -4, 4], 24),
        ([0, 0, 0, 0, -2], 1728),
    ],
)
def test_conductor_table(ainvs, N):
    assert conductor(W(ainvs))[0] == N


def test_conductor_cm_curve_detail():
    N, local, dmin = conductor(W([0, 0, 0, 0, 1]))
    assert dmin == -432
    assert [(ld.q, ld.v_q_N) for ld in local] == [(2, 2), (3, 2)]
    assert all(ld.reduction is Reduction.ADDITIVE for ld in local)


@pytest.mark.parametrize(
    "ainvs, q, kodaira, reduction",
    [
        ([0, -1, 1, -10, -20], 11, "I5", Reduction.SPLIT),
        ([1, 0, 1, 4, -6], 2, "I6", None),
        ([1, 0, 1, 4, -6], 7, "I3", None),
        ([0, 0, 1, -1, 0], 37, "I1", None),
    ],
)
def test_multiplicative_kodaira(ainvs, q, kodaira, reduction):
    ld, rescaled = tate(W(ainvs), q)
    assert rescaled == 0
    assert ld.kodaira == kodaira and ld.v_q_N == 1
    if reduction is not None:
        assert ld.reduction is reduction


def test_tate_reports_rescaling():
    ld, rescaled = tate(_scale_up(W([0, 0, 0, 0, 1]), 5), 5)
    assert rescaled == 1 and ld.v_q_N == 0


def _local_check(m):
    N, local, dmin = conductor(m)
    assert N == math.prod(ld.q**ld.v_q_N for ld in local)
    for ld in local:
        cap = 8 if ld.q == 2 else 5 if ld.q == 3 else 2
        assert 0 < ld.v_q_N <= cap
        assert ld.v_q_N <= ld.v_q_Dmin
        if ld.q >= 5 and ld.reduction is Reduction.ADDITIVE:
            assert ld.v_q_N == 2
        # Ogg: v(Dmin) = f + m - 1
        assert ld.v_q_Dmin == ld.v_q_N + fibre_components(ld.kodaira) - 1, (m, ld)
        mult = ld.reduction in (Reduction.SPLIT, Reduction.NONSPLIT)
        assert mult == (ld.v_q_N == 1)
    return N, local


@settings(max_examples=200, deadline=None)
@given(models)
def test_local_data_properties(m):
    _local_check(m)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=-40, max_value=40), st.integers(min_value=-40, max_value=40), st.sampled_from([2, 3, 4, 6, 8, 9, 12, 18]))
def test_local_data_properties_at_2_and_3(a, b, k):
    # small-coefficient models scaled by powers of 2 and 3 exercise the starred fibres
    m = W([0, 0, 0, a * k * k, b * k**3])
    assume(not m.is_singular())
    _local_check(m)


@settings(max_examples=40, deadline=None)
@given(models)
def test_bad_trace_matches_naive_count(m):
    mm = minimal_model(m)
    for q in primes_up_to(50):
        if mm.discriminant() % q == 0:
            assert bad_trace(mm, q) == q - naive_affine_count(mm, q)


# ------------------------------------------------------------ counting

@pytest.mark.parametrize("q, a_q", [(5, 0), (7, -4)])
def test_cm_curve_traces(cm_curve, q, a_q):
    assert trace_of_frobenius(cm_curve, q).a_q == a_q
    assert q + 1 - (naive_affine_count(cm_curve, q) + 1) == a_q


@pytest.mark.parametrize("q", [2, 3])
def test_trace_at_bad_prime(cm_curve, q):
    with pytest.raises(BadReductionError):
        trace_of_frobenius(cm_curve, q)


@settings(max_examples=50, deadline=None)
@given(models)
def test_count_points_matches_naive(m):
    for q in (2, 3, 5, 7, 11, 13, 29):
        if m.discriminant() % q:
            assert count_points(m, q) == naive_affine_count(m, q) + 1


@settings(max_examples=50, deadline=None)
@given(models)
def test_hasse_bound(m):
    mm = minimal_model(m)
    for q in primes_up_to(400):
        if mm.discriminant() % q:
            a = trace_of_frobenius(mm, q).a_q
            assert a * a <= 4 * q


@settings(max_examples=40, deadline=None)
@given(models, st.sampled_from([-3, -1, 2, 5, -7, 6]))
def test_twist_compatibility(m, d):
    E = minimal_model(m)
    Ed = quadratic_twist(E, d)
    N = conductor(E)[0]
    for q in primes_up_to(200):
        if (6 * d * N) % q == 0:
            continue
        assert trace_of_frobenius(Ed, q).a_q == kronecker(d, q) * trace_of_frobenius(E, q).a_q


def test_torsion_bounds(cm_curve):
    assert torsion_bound(cm_curve) == 6
    assert torsion_bound(W([1, 0, 1, 4, -6])) == 6
    assert torsion_bound(W([0, 0, 1, -1, 0])) == 1
    with pytest.raises(ValueError):
        torsion_bound(cm_curve, 1)


# ------------------------------------------------------------ twists

def test_twist_examples(cm_curve):
    assert quadratic_twist(cm_curve, -3) == W([0, 0, 0, 0, -27])
    m = W([1, 0, 1, 4, -6])
    assert minimal_model(quadratic_twist(m, 1)) == minimal_model(m)
    for bad in (0, 4, -12):
        with pytest.raises(ValueError):
            quadratic_twist(m, bad)


@settings(max_examples=60, deadline=None)
@given(models, st.sampled_from([-3, -1, 2, 5, -15]))
def test_twist_is_an_involution(m, d):
    back = quadratic_twist(quadratic_twist(m, d), d)
    assert invariants(back).j == invariants(m).j
    assert minimal_model(back) == minimal_model(m)


# ------------------------------------------------------------ group law and 2-torsion

def test_two_torsion():
    assert has_full_two_torsion(W([0, 0, 0, -1, 0]))
    assert two_torsion_x(W([0, 0, 0, 0, 1])) == [Fraction(-1)]
    assert not has_full_two_torsion(W([0, 0, 0, 0, 1]))
    assert two_torsion_x(W([0, 0, 1, -1, 0])) == []


def test_group_law_on_cm_curve(cm_curve):
    P = (Fraction(2), Fraction(3))
    assert multiply(cm_curve, 6, P) is None
    assert multiply(cm_curve, 3, P) == (Fraction(-1), Fraction(0))
    assert add(cm_curve, P, negate(cm_curve, P)) is None


def test_group_law_properties():
    E = W([0, 0, 1, -1, 0])  # rank one, generator (0, 0)
    P = (Fraction(0), Fraction(0))
    pts = [multiply(E, k, P) for k in range(-4, 5)]
    for A in pts:
        assert E.contains(A)
        for B in pts:
            assert add(E, A, B) == add(E, B, A)
            for C in pts[::3]:
                assert add(E, add(E, A, B), C) == add(E, A, add(E, B, C))
    assert multiply(E, 3, P) == add(E, P, add(E, P, P))


# ------------------------------------------------------------ point search

def test_search_cm_curve(cm_curve):
    pts = search_points(cm_curve, 100)
    got = {(P.x, P.y) for P in pts}
    F = Fraction
    assert got == {(F(0), F(1)), (F(0), F(-1)), (F(2), F(3)), (F(2), F(-3)), (F(-1), F(0))}
    assert all(P.torsion for P in pts)


def test_search_finds_rank_point():
    pts = non_torsion(search_points(W([0, 0, 0, 0, -2]), 10))
    assert {(P.x, P.y) for P in pts} >= {(Fraction(3), Fraction(5)), (Fraction(3), Fraction(-5))}


def test_search_bad_bound(cm_curve):
    with pytest.raises(ValueError):
        search_points(cm_curve, 0)


@pytest.mark.parametrize("ainvs", [[0, 0, 1, -1, 0], [1, 0, 1, 4, -6], [0, 0, 0, 0, -2], [1, -1, 1, -3, 3], [0, 0, 0, -1, 0]])
def test_search_matches_brute_force(ainvs):
    m = W(ainvs)
    got = {(P.x, P.y) for P in search_points(m, 30)}
    assert got == naive_points_up_to(m, 30, 1500)


# ------------------------------------------------------------ Frey curves

def test_frey_examples():
    assert frey_curve(DescentWitness(7, Case.CASE1, 1, 1), 7) == (W([0, -3, 0, 3, 0]), "E1")
    assert frey_curve(DescentWitness(7, Case.CASE2, 1, 1), 7) == (W([3, 0, -243, 0, 0]), "E4")
    assert frey_curve(DescentWitness(7, Case.CASE3, 1, 1), 7) == (W([3, 0, 972, 0, 0]), "E5")
    assert frey_curve(DescentWitness(7, Case.CASE1, 3, 1), 7)[1] == "E2"
    assert frey_curve(DescentWitness(7, Case.CASE1, 2, 1), 7)[0] == W([1, -1, 0, 3 * 2**7 // 16, 0])


def test_frey_errors():
    with pytest.raises(ValueError):
        frey_model("E1", 1, 5)
    with pytest.raises(ValueError):
        frey_curve(DescentWitness(7, Case.CASE1, 2, 2), 7)
    with pytest.raises(ValueError):
        frey_model("E9", 1, 7)


def test_trivial_witness_lands_on_cm_curve(cm_curve):
    E1 = frey_model("E1", 1, 11)
    assert invariants(E1).c4 == invariants(cm_curve).c4
    assert (E1.c_invariants(), E1.discriminant()) == (cm_curve.c_invariants(), cm_curve.discriminant())


# ------------------------------------------------------------ curves by conductor

def test_conductor_14_contains_known_class():
    found = find_curves_by_conductor(14, 8)
    keys = {minimal_model(m).c_invariants() for m in found}
    assert minimal_model(W([1, 0, 1, 4, -6])).c_invariants() in keys
    assert all(conductor(m)[0] == 14 for m in found)
    assert len(keys) == len(found)


def test_conductor_36_classes():
    found = find_curves_by_conductor(36, 20)
    assert [m.ainvs for m in found] == sorted(
        [(0, 0, 0, 0, 1), (0, 0, 0, 0, -27), (0, 0, 0, -15, 22), (0, 0, 0, -135, -594)],
        key=lambda a: W(list(a)).c_invariants(),
    )


def test_conductor_72_has_the_two_torsion_curve():
    found = find_curves_by_conductor(72, 20)
    hits = [m for m in found if has_full_two_torsion(m) and invariants(m).j == Fraction(35152, 9)]
    assert hits
    assert all(conductor(m)[0] == 72 for m in found)


def test_conductor_search_may_be_empty():
    # no curve has conductor 1, and none of conductor 2
    assert find_curves_by_conductor(1, 2) == []
    assert find_curves_by_conductor(2, 3) == []
