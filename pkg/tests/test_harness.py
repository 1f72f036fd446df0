import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropnev import generators as gen
from tropnev import harness as hz
from tropnev import nevanlinna as nev
from tropnev import plfun
from tropnev.core import BOTTOM
from tropnev.curves import Curve, Hyperplane
from tropnev.errors import DegenerateCurve, DuplicateValues, NotComplete, NotGeneralPosition, OutOfWindow
from tropnev.expr import parse_expression
from tropnev.suites import coordinate_complete_scenario

X = plfun.IDENTITY
ZERO = plfun.constant(0)
INF = BOTTOM
rngs = st.integers(0, 2**32 - 1).map(random.Random)

TP2 = Curve((ZERO, X, plfun.scale(X, 2)))
TP2_FAMILY = tuple(Hyperplane(a) for a in ((1, INF, INF), (INF, 1, 1), (INF, INF, 1), (1, 1, INF)))
F57 = parse_expression("max(-3*x, 0, 4*x - 8) - max(-2*x + 12, 3*x - 18)")


def test_default_grid_shape():
    f = parse_expression("max(0, x - 5, -x - 2)")
    grid = hz.default_grid([f])
    assert len(grid) == 64 and grid[0] == 1 and grid[-1] == 24
    assert all(a < b for a, b in zip(grid, grid[1:]))
    assert hz.default_grid([f], radius=10)[-1] == 10
    assert hz.default_grid([ZERO])[-1] == 4


def test_explicit_grid_clipping():
    assert hz._fit_grid((1, 5, 9), [ZERO], Fraction(6)) == ((1, 5), 1)
    with pytest.raises(OutOfWindow):
        hz._fit_grid((7, 9), [ZERO], Fraction(6))
    with pytest.raises(ValueError):
        hz._fit_grid((3, 2), [ZERO], None)


def test_trend_verdict():
    assert hz.trend_verdict([5, 4, 3, 2]) == hz.FAILS
    assert hz.trend_verdict([0, 0, 1, 1]) == hz.HOLDS
    assert hz.trend_verdict([0, 0, 2, 1, 3]) == hz.INCONCLUSIVE
    assert hz.trend_verdict([1]) == hz.INCONCLUSIVE


def test_compare_uses_tail_slope_not_grid_values():
    # deficit r - 100 is negative on the grid but bounded below only by its slope
    lhs = plfun.constant(100)
    v = hz.compare("t", lhs, X, (1, 2, 3))
    assert v.verdict == hz.HOLDS and v.difference_min_on_grid == -99
    v = hz.compare("t", plfun.scale(X, 2), X, (1, 2, 3))
    assert v.verdict == hz.FAILS and v.lhs_tail_slope == 2 and v.rhs_tail_slope == 1
    assert hz.equality_verdict("e", X, plfun.affine(1, 7), (1, 2)).holds
    assert not hz.equality_verdict("e", X, plfun.scale(X, 2), (1, 2)).holds


def test_scenario_validation():
    with pytest.raises(ValueError):
        hz.Scenario(TP2, (Hyperplane((0, 0)),))
    with pytest.raises(ValueError):
        hz.Scenario(TP2, TP2_FAMILY, c=0)


def test_fmt_constant_on_tp2():
    for res in hz.fmt_report(hz.Scenario(TP2, TP2_FAMILY)):
        assert res.constant == hz.fmt_expected_constant(TP2, res.hyperplane)
        assert len({row[-1] for row in res.rows}) == 1


def test_smt_main_preconditions():
    sc = hz.Scenario(TP2, TP2_FAMILY)
    assert hz.smt_main_report(sc).holds
    with pytest.raises(NotGeneralPosition):
        hz.smt_main_report(hz.Scenario(TP2, TP2_FAMILY + (TP2_FAMILY[0],)))
    flat = Curve((ZERO, plfun.constant(1)))
    with pytest.raises(DegenerateCurve):
        hz.smt_main_report(hz.Scenario(flat, (Hyperplane((0, INF)), Hyperplane((INF, 0)), Hyperplane((0, 0)))))


def test_general_smt_and_defects_on_tp2():
    sc = hz.Scenario(TP2, TP2_FAMILY)
    assert hz.general_smt_report(sc).holds
    assert hz.product_to_sum_check(sc)
    rep = hz.defect_relation_report(sc)
    assert rep["holds"] and rep["bound"] == 3


def test_complete_hyperplane_requires_real_coefficients():
    with pytest.raises(NotComplete):
        hz.complete_hyperplane_identity(hz.Scenario(TP2, TP2_FAMILY))


def test_one_variable_counterexample():
    trunc = hz.truncated_counterexample(F57, (-12, -2))
    assert trunc.verdict == hz.FAILS
    assert trunc.lhs_tail_slope == Fraction(7, 2) and trunc.rhs_tail_slope == Fraction(5, 2)
    assert hz.truncated_counterexample(F57, (-12, -2), truncated=False).holds
    mero = hz.meromorphic_smt_report(F57, (-12, -2))
    assert mero.holds and mero.details["simplified_hypothesis"]
    assert mero.details["simplified"].holds
    N1, N2 = trunc.details["value_counting_profiles"]
    assert (N1(20), N2(20)) == (19, Fraction(27, 2))
    with pytest.raises(DuplicateValues):
        hz.truncated_counterexample(F57, (-2, -2))


def test_growth_indicator():
    assert hz.growth_indicator(TP2).classification == "Subnormal"
    e = plfun.e2_function((-8, 8))
    E = Curve((plfun.restrict(ZERO, (-8, 8)), e))
    rep = hz.growth_indicator(E)
    assert rep.classification == "NotSubnormal" and rep.final > 0.6


@pytest.mark.parametrize("n", [1, 2, 3])
def test_degenerate_equality_construction(n):
    v = hz.cc410_report(coordinate_complete_scenario(n))
    assert v.holds
    assert v.details["lambda_star"] == n + 1 and v.details["lambda"] == 0
    assert hz.tail_slope(v.details["equality"].details["deficit_profile"]) == 0


# -- properties ----------------------------------------------------------------------


@given(rngs, st.integers(1, 3))
def test_first_main_theorem_property(rng, n):
    F = gen.curve(rng, n)
    H = Hyperplane(gen.coefficient_vector(rng, n))
    res = hz.fmt_report(hz.Scenario(F, (H,)))[0]
    assert res.constant == hz.fmt_expected_constant(F, H)


@given(rngs, st.integers(1, 3))
def test_second_main_theorem_property(rng, n):
    q = rng.randint(n + 1, 6)
    sc = hz.Scenario(gen.curve(rng, n), tuple(gen.general_position_family(rng, n, q)))
    assert hz.smt_main_report(sc).holds
    assert hz.product_to_sum_report(sc).holds
    assert hz.casorati_counting_check(sc).holds


@given(rngs, st.integers(1, 3))
def test_complete_hyperplane_property(rng, n):
    F = gen.curve(rng, n)
    v = hz.complete_hyperplane_identity(hz.Scenario(F, (gen.complete_hyperplane(rng, n),)))
    assert v.holds and hz.tail_slope(v.details["deficit_profile"]) == 0


@given(rngs, st.integers(1, 2))
def test_cartan_profile_matches_pointwise(rng, n):
    F = gen.curve(rng, n)
    T = nev.cartan_profile(F)
    for r in (Fraction(1, 2), Fraction(3), Fraction(17, 3)):
        assert T(r) == nev.cartan_characteristic(F, r)
