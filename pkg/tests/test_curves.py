from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropnev import curves, plfun
from tropnev.core import BOTTOM
from tropnev.curves import Curve, Hyperplane
from tropnev.errors import AllBottomWitness, DegenerateComposition, NotReduced
from tropnev.expr import parse_expression

from conftest import polynomials, rationals, trop_scalars

X = plfun.IDENTITY
ZERO = plfun.constant(0)
INF = BOTTOM


def dense_points(lo=-12, hi=12, den=12):
    return [Fraction(k, den) for k in range(lo * den, hi * den + 1)]


def sampled_max_twice(fns, alpha, points):
    for x in points:
        vals = [a + f(x) for a, f in zip(alpha, fns) if a is not BOTTOM]
        if vals.count(max(vals)) < 2:
            return False
    return True


def test_hyperplane_basics():
    H = Hyperplane((1, INF, Fraction(-1, 2)))
    assert H.dimension == 2 and H.norm == 1 and not H.is_complete
    assert H((0, 5, 2)) == Fraction(3, 2)
    assert H.contains((0, 7, Fraction(3, 2))) and not H.contains((0, 7, 2))
    assert Hyperplane((0, 0)).is_complete
    with pytest.raises(ValueError):
        Hyperplane((INF, INF))
    with pytest.raises(ValueError):
        Hyperplane((0,))
    assert curves.coordinate_hyperplane(1, 2).coefficients == (INF, 0, INF)


def test_curve_validation():
    with pytest.raises(ValueError):
        Curve((ZERO, parse_expression("min(x, 0)")))  # a pole at 0
    with pytest.raises(ValueError):
        Curve((plfun.BOTTOM_FUNCTION, plfun.BOTTOM_FUNCTION))
    with pytest.raises(NotReduced):
        Curve.reduced((parse_expression("max(0, x)"), parse_expression("max(1, x + 1)")))
    F = Curve.reduced((ZERO, X, plfun.scale(X, 2)))
    assert F.n == 2 and F.is_global and F.norm_at(-3) == 0 and F.norm_at(3) == 6
    assert F.translate(5).norm_at(3) == 11


def test_compose_matches_pointwise_max():
    F = Curve((ZERO, X, plfun.scale(X, 2)))
    H = Hyperplane((1, INF, Fraction(1, 2)))
    g = curves.compose(H, F)
    for x in dense_points(-5, 5, 2):
        assert g(x) == max(1, Fraction(1, 2) + 2 * x)


def test_witness_for_three_meromorphic_functions():
    fns = [parse_expression(s) for s in (
        "max(-1*x + 1, 1, 1*x - 1)", "max(min(x, 0), 2*x - 4)", "max(-1*x - 1, -1, 2*x - 5)")]
    window = (Fraction(-5), Fraction(5))
    assert curves.verify_dependence_witness(fns, (0, 1, 2), window)
    assert not curves.verify_dependence_witness(fns, (0, 0, 0), window)
    pts = dense_points(-5, 5)
    alpha = [Fraction(a) for a in (0, 1, 2)]
    assert sampled_max_twice(fns, alpha, pts)
    assert not sampled_max_twice(fns, [Fraction(0)] * 3, pts)


def test_witness_needs_a_real_coefficient():
    with pytest.raises(AllBottomWitness):
        curves.verify_dependence_witness([ZERO, X], (INF, INF))


def test_tail_certificate_and_search():
    assert curves.tail_certificate(Curve((ZERO, X, plfun.scale(X, 2))))
    assert curves.is_nondegenerate(Curve((ZERO, parse_expression("max(0, x)"))))
    flat = Curve((ZERO, plfun.constant(1)))
    assert not curves.tail_certificate(flat)
    alpha = curves.find_dependence_witness(flat)
    assert alpha is not None and curves.verify_dependence_witness(flat.components, alpha)
    assert not curves.is_nondegenerate(flat)


def test_representation_length_and_counts():
    F = Curve((ZERO, X, plfun.scale(X, 2)))
    family = [Hyperplane(a) for a in ((1, INF, INF), (INF, 1, 1), (INF, INF, 1), (1, 1, INF))]
    assert [curves.representation_length(H, F) for H in family] == [1, 2, 1, 2]
    assert curves.ddg(family, F) == 4
    assert curves.ddg_star(family, F) == 2
    assert curves.single_coefficient_count(family) == 2
    assert curves.incomplete_count(family) == 4
    # x is never the strict maximum of (0, x, 2x), so its term is redundant
    assert curves.representation_length(Hyperplane((0, 0, 0)), F) == 2
    assert curves.representation_length(Hyperplane((0, 1, 0)), F) == 3
    with pytest.raises(DegenerateComposition):
        curves.representation_length(Hyperplane((0, INF)), Curve((plfun.BOTTOM_FUNCTION, ZERO)))


# -- properties ----------------------------------------------------------------------


@given(st.lists(polynomials(3), min_size=2, max_size=3), st.data())
def test_witness_decision_agrees_with_sampling(fns, data):
    alpha = data.draw(st.lists(st.one_of(st.just(BOTTOM), rationals(-4, 4, 2)),
                               min_size=len(fns), max_size=len(fns)).filter(
        lambda a: any(v is not BOTTOM for v in a)))
    decided = curves.verify_dependence_witness(fns, alpha)
    if decided:
        assert sampled_max_twice(fns, alpha, dense_points())


@given(polynomials(), rationals(-5, 5))
def test_shifted_copy_is_dependent(f, c):
    # f and f + c are tied under alpha = (c, 0)
    g = plfun.add_constant(f, c)
    assert curves.verify_dependence_witness([f, g], (c, 0))
    assert curves.find_dependence_witness([f, g]) is not None


@given(st.lists(polynomials(3), min_size=2, max_size=3), st.data())
def test_representation_length_bounds(fns, data):
    F = Curve(tuple(fns))
    a = data.draw(st.lists(trop_scalars(), min_size=len(fns), max_size=len(fns)).filter(
        lambda a: any(v is not BOTTOM for v in a)))
    H = Hyperplane(tuple(a))
    k = curves.representation_length(H, F)
    real = sum(v is not BOTTOM for v in a)
    assert 1 <= k <= real
    if real == 1:
        assert k == 1


@given(st.lists(polynomials(3), min_size=2, max_size=3))
def test_tail_certificate_is_sound(fns):
    F = Curve(tuple(fns))
    if curves.tail_certificate(F):
        assert curves.find_dependence_witness(F) is None


def test_witness_search_relative_to_candidates():
    import itertools

    lattice = [tuple(map(Fraction, a)) for a in itertools.product(range(-3, 4), repeat=2)]
    assert curves.nondegenerate_witnessed(Curve((ZERO, X)), lattice)
    f = parse_expression("max(0, x)")
    assert not curves.nondegenerate_witnessed([f, f], [(0, 0)])
    fns = [parse_expression(s) for s in (
        "max(-1*x + 1, 1, 1*x - 1)", "max(min(x, 0), 2*x - 4)", "max(-1*x - 1, -1, 2*x - 5)")]
    window = (Fraction(-5), Fraction(5))
    restricted = [plfun.restrict(g, window) for g in fns]
    assert not curves.nondegenerate_witnessed(restricted, [(0, 0, 0), (0, 1, 2)])
