from fractions import Fraction

import pytest
from hypothesis import given

from tropnev import plfun
from tropnev.errors import ScenarioSyntaxError, UnknownName
from tropnev.expr import format_expression, from_json, parse_expression, to_json

from conftest import pl_functions, rationals


@pytest.mark.parametrize("src, points", [
    ("3", {0: 3, -7: 3}),
    ("2*x - 1/2", {0: Fraction(-1, 2), 1: Fraction(3, 2)}),
    ("-x", {4: -4}),
    ("max(0, x)", {-2: 0, 5: 5}),
    ("min(x, 0, 2*x + 1)", {-3: -5, Fraction(-1, 4): Fraction(-1, 4), 2: 0}),
    ("0.25*x", {4: 1}),
    ("shift(max(0, x), -2)", {1: 0, 5: 3}),
    ("3*(x - 1) - max(x, 1)*2", {0: -5, 4: 1}),
])
def test_parse_values(src, points):
    f = parse_expression(src)
    for x, want in points.items():
        assert f(Fraction(x)) == want


def test_environment_names():
    g = parse_expression("max(0, x)")
    f = parse_expression("g - shift(g, 1)", {"g": g})
    assert f(Fraction(-5)) == 0 and f(Fraction(5)) == -1
    with pytest.raises(UnknownName):
        parse_expression("h + 1")


@pytest.mark.parametrize("src, col", [
    ("max(0, x", 9),
    ("x * x", 1),
    ("2 +", 4),
    ("x )", 3),
    ("3x", 2),
])
def test_syntax_errors_carry_positions(src, col):
    with pytest.raises(ScenarioSyntaxError) as info:
        parse_expression(src)
    assert info.value.col == col
    assert f"col {col}" in str(info.value)


def test_format_expression_examples():
    assert format_expression(parse_expression("max(0, x)")) == "1*max(0, x)"
    assert format_expression(parse_expression("x - 3")) == "1*x - 3"
    with pytest.raises(ValueError):
        format_expression(plfun.restrict(plfun.IDENTITY, (0, 1)))


@given(pl_functions())
def test_format_round_trip(f):
    assert parse_expression(format_expression(f)) == f


@given(pl_functions(), rationals(-5, 5), rationals(1, 5))
def test_json_round_trip(f, lo, width):
    assert from_json(to_json(f)) == f
    w = plfun.restrict(f, (lo, lo + width))
    assert from_json(to_json(w)) == w
    assert from_json(to_json(plfun.BOTTOM_FUNCTION)).is_bottom
