from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropnev import nevanlinna as nev
from tropnev import plfun
from tropnev.core import BOTTOM
from tropnev.curves import Curve, Hyperplane
from tropnev.errors import OutOfWindow, ZeroCharacteristic
from tropnev.expr import parse_expression

from conftest import pl_functions, polynomials

F57 = parse_expression("max(-3*x, 0, 4*x - 8) - max(-2*x + 12, 3*x - 18)")
F0 = parse_expression("max(-1*x + 1, 1, x - 1)")
X = plfun.IDENTITY
radii = st.builds(Fraction, st.integers(1, 200), st.integers(1, 8))


def test_proximity_examples():
    assert nev.proximity(F57, 13) == 12
    assert nev.proximity(plfun.constant(-5), 3) == 0
    assert nev.proximity(X, 4) == 2


def test_proximity_below_twelve_differs_from_r_minus_one():
    # f(-r) = r - 12 is negative for r < 12, so only f(r) contributes
    assert nev.proximity(F57, 8) == 9
    assert nev.proximity(F57, 8) != 8 - 1


def test_counting_examples():
    assert nev.counting_poles(F57, 8) == 5
    assert nev.counting_roots(F0, 4) == 3
    assert nev.counting_poles(F0, 4) == 0
    assert nev.counting_truncated(F57, 8, "poles") == 1
    assert nev.counting_truncated(F0, 4, "roots") == 3
    assert nev.counting_truncated(plfun.constant(2), 4, "roots") == 0


def test_characteristic_examples():
    s = nev.characteristic(F57, 13)
    assert s.T == Fraction(7, 2) * 13 - 16 == Fraction(59, 2)
    assert nev.characteristic(plfun.constant(0), 5).T == 0
    s = nev.characteristic(plfun.positive_part(X), 6)
    assert (s.m, s.N, s.T) == (3, 0, 3)


def test_jensen_examples():
    assert nev.jensen_defect(plfun.max_combine(X, -X), 3) == 0
    assert nev.jensen_defect(F57, 20) == 0


def test_cartan_examples():
    F = Curve((plfun.constant(0), X))
    assert nev.cartan_characteristic(F, 6) == 3
    e = plfun.e2_function((-8, 8))
    E = Curve((plfun.restrict(plfun.constant(0), (-8, 8)), e))
    want = (max(0, plfun.e2(3)) + max(0, plfun.e2(-3))) / 2 - 1
    assert nev.cartan_characteristic(E, 3) == want
    assert nev.cartan_characteristic(Curve((plfun.constant(2), plfun.constant(2))), 7) == 0
    with pytest.raises(OutOfWindow):
        nev.cartan_characteristic(E, 9)


def test_weil_examples():
    F = Curve((plfun.constant(0), X))
    w = nev.weil_and_proximity(F, Hyperplane((0, 0)), 5)
    assert (w.lambda_plus, w.lambda_minus, w.m_f) == (0, 0, 0)
    w = nev.weil_and_proximity(F, Hyperplane((0, BOTTOM)), 5)
    assert (w.lambda_plus, w.lambda_minus, w.m_f) == (5, 0, Fraction(5, 2))


def test_defect_estimates():
    F = Curve((plfun.constant(0), X))
    grid = [Fraction(k) for k in range(1, 65)]
    assert nev.defect_estimate(F, Hyperplane((0, BOTTOM)), grid) == 1
    assert nev.defect_estimate(F, Hyperplane((0, 0)), grid) == 0
    with pytest.raises(ZeroCharacteristic):
        nev.defect_estimate(Curve((plfun.constant(0), plfun.constant(0))), Hyperplane((0, 0)), grid)


def test_profiles_of_pole_counterexample():
    T = nev.characteristic_profile(F57)
    assert T.breakpoints[-1] == 12 and T.slopes[-1] == Fraction(7, 2)
    N1 = nev.counting_profile(F57, "poles", truncated=True)
    assert N1(20) == Fraction(1, 2) * 20 - 3


# -- properties ----------------------------------------------------------------------


@given(polynomials(), radii)
def test_jensen_on_polynomials(f, r):
    assert nev.jensen_defect(f, r) == 0
    # for entire f the root counting function is read off the values alone
    assert nev.counting_roots(f, r) == (f(r) + f(-r)) / 2 - f(0)


@given(pl_functions(), radii)
def test_jensen_on_meromorphic(f, r):
    assert nev.jensen_defect(f, r) == 0


@given(pl_functions(), radii)
def test_profiles_agree_with_pointwise(f, r):
    assert nev.characteristic_profile(f)(r) == nev.characteristic(f, r).T
    assert nev.counting_profile(f, "roots")(r) == nev.counting_roots(f, r)
    assert nev.counting_profile(f, "poles", True)(r) == nev.counting_truncated(f, r, "poles")


@given(pl_functions(), pl_functions(), radii)
def test_subadditivity(f, g, r):
    for combine in (plfun.add_combine, plfun.max_combine):
        h = combine(f, g)
        assert nev.proximity(h, r) <= nev.proximity(f, r) + nev.proximity(g, r)
        assert nev.counting_poles(h, r) <= nev.counting_poles(f, r) + nev.counting_poles(g, r)
        assert nev.characteristic(h, r).T <= nev.characteristic(f, r).T + nev.characteristic(g, r).T


@given(pl_functions(), radii, st.builds(Fraction, st.integers(1, 9), st.integers(1, 4)))
def test_homogeneity(f, r, alpha):
    assert nev.characteristic(plfun.scale(f, alpha), r).T == alpha * nev.characteristic(f, r).T


@given(pl_functions(), radii)
def test_truncated_below_full(f, r):
    assert nev.counting_truncated(f, r, "poles") <= nev.counting_poles(f, r) or all(
        c.multiplicity < 1 for c in plfun.poles(f))


@given(st.lists(polynomials(), min_size=2, max_size=4), st.builds(Fraction, st.integers(-9, 9)),
       radii, st.randoms(use_true_random=False))
def test_cartan_invariances(comps, lam, r, rnd):
    F = Curve(tuple(comps))
    T = nev.cartan_characteristic(F, r)
    assert nev.cartan_characteristic(F.translate(lam), r) == T
    shuffled = list(comps)
    rnd.shuffle(shuffled)
    assert nev.cartan_characteristic(Curve(tuple(shuffled)), r) == T


@given(polynomials(), st.lists(radii, min_size=2, max_size=5))
def test_one_variable_cartan_matches_characteristic(f, rs):
    F = Curve((plfun.constant(0), f))
    diffs = {nev.cartan_characteristic(F, r) - nev.characteristic(f, r).T for r in rs}
    assert len(diffs) == 1


@given(st.lists(polynomials(), min_size=2, max_size=3).flatmap(
    lambda comps: st.tuples(st.just(comps), st.lists(
        st.one_of(st.just(BOTTOM), st.integers(-3, 3).map(Fraction)), min_size=len(comps),
        max_size=len(comps)).filter(lambda a: any(v is not BOTTOM for v in a)))),
    st.lists(radii, min_size=2, max_size=6))
def test_first_main_theorem_constancy(data, rs):
    comps, a = data
    F, H = Curve(tuple(comps)), Hyperplane(tuple(a))
    assert len({nev.first_main_constant(F, H, r) for r in rs}) == 1
