import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from tropnev.core import BOTTOM
from tropnev.errors import DimensionMismatch, NotSquareFamily, SingularMatrix, TooLarge
from tropnev.linalg import (
    TropMatrix,
    adjoint,
    check_balance,
    cramer_matrix,
    cramer_permanents,
    cramer_report,
    cramer_upper_bound,
    general_position,
    is_singular,
    tmat_mul,
    tropical_determinant,
    value_vector,
    vectors_independent,
)
from tropnev.suites import brute_force_determinant

B = BOTTOM
A39 = [[0, -1, 1], [0, 0, 2], [0, 1, 0]]
b39 = [0, -1, 1]
A313 = [[1, 2, 0], [1, 0, 1], [0, 1, 1]]
B313 = [[-1, 1, -1], [0, 0, 1], [1, 2, 1]]
C313 = [[2, 2, 3], [2, 3, 2], [2, 3, 2]]


def square(side, lo=-3, hi=3, bottoms=True):
    entry = st.integers(lo, hi).map(Fraction)
    if bottoms:
        entry = st.one_of(entry, entry, entry, st.just(BOTTOM))
    return st.lists(st.lists(entry, min_size=side, max_size=side), min_size=side, max_size=side)


def test_determinant_examples():
    cert = tropical_determinant(A313)
    assert cert.value == 4 and cert.is_unique
    assert tropical_determinant(C313).value == 8
    diag = tropical_determinant([[0, B], [B, 0]])
    assert diag.value == 0 and diag.is_unique


def test_singularity_examples():
    assert is_singular([[0, -1, 0], [0, 0, -1], [0, 1, 1]])
    assert not is_singular([[0, -1, 1], [-1, 0, 2], [1, 1, 0]])
    assert not is_singular([[0, B], [B, 0]])
    assert is_singular([[B, B], [B, B]])


def test_size_guards():
    with pytest.raises(DimensionMismatch):
        tropical_determinant([[0, 1]])
    with pytest.raises(TooLarge):
        tropical_determinant([[0] * 11 for _ in range(11)])


def test_adjoint_examples():
    assert adjoint([[0, B], [B, 0]]).to_rows() == [[0, B], [B, 0]]
    assert cramer_permanents(A39, b39) == [3, 3, 1]


def test_cramer_example():
    assert cramer_upper_bound(A39, b39) == [0, 0, -2]
    ident = TropMatrix.identity(3)
    assert cramer_upper_bound(ident, [Fraction(2), Fraction(-1), Fraction(5)]) == [2, -1, 5]
    with pytest.raises(SingularMatrix):
        cramer_upper_bound([[0, 0], [0, 0]], [0, 0])


def test_balance_examples():
    assert check_balance(A39, [0, 0, -2], b39)
    assert not check_balance(A39, [1, 0, -2], b39)
    assert check_balance([[B, B], [B, B]], [3, 4], [B, B])


def test_independence_examples():
    cols = [list(c) for c in zip(*A313)]
    assert vectors_independent(cols)
    assert not vectors_independent([[1, 2], [1, 2]])
    assert vectors_independent([[1, B], [B, 1]])
    with pytest.raises(NotSquareFamily):
        vectors_independent([[1, 2, 3]])


def test_general_position_examples():
    fam = [(1, B, B), (B, 1, 1), (B, B, 1), (1, 1, B)]
    assert general_position(fam, 2)
    coords = [tuple(0 if i == j else B for j in range(3)) for i in range(3)]
    assert general_position(coords + [(1, -2, 5)], 2)
    assert not general_position([value_vector(1), value_vector(1)], 1)


def test_product_examples():
    assert tmat_mul(A313, B313).to_rows() == C313
    assert tmat_mul(A313, TropMatrix.identity(3)).to_rows() == A313


@given(st.integers(1, 6).flatmap(square))
def test_determinant_matches_enumeration(rows):
    cert = tropical_determinant(rows)
    assert (cert.value, cert.multiplicity) == brute_force_determinant(rows)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), st.data())))
def test_determinant_invariances(args):
    rows, data = args
    n = len(rows)
    det = tropical_determinant(rows).value
    assert tropical_determinant([list(c) for c in zip(*rows)]).value == det
    perm = data.draw(st.permutations(range(n)))
    assert tropical_determinant([rows[i] for i in perm]).value == det
    assert tropical_determinant([[r[j] for j in perm] for r in rows]).value == det
    c = Fraction(data.draw(st.integers(-5, 5)), 2)
    shifted = [list(r) for r in rows]
    shifted[0] = [B if a is B else a + c for a in shifted[0]]
    want = B if det is B else det + c
    assert tropical_determinant(shifted).value == want


@given(square(3))
def test_adjoint_entries_are_minors(rows):
    adj = adjoint(rows)
    for i in range(3):
        for j in range(3):
            minor = [[rows[r][c] for c in range(3) if c != i] for r in range(3) if r != j]
            assert adj[i, j] == brute_force_determinant(minor)[0]


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
def test_determinant_product_inequality(pair):
    A, Bm = pair
    dA, dB = tropical_determinant(A).value, tropical_determinant(Bm).value
    dC = tropical_determinant(tmat_mul(A, Bm)).value
    if dA is not B and dB is not B:
        assert dC is not B and dA + dB <= dC


@given(square(3, bottoms=False), st.lists(st.integers(-3, 3).map(Fraction), min_size=3, max_size=3),
       st.integers(0, 2), st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3)]), st.data())
def test_cramer_bound_is_sharp(A, b, i, delta, data):
    assume(not is_singular(A))
    bound = cramer_upper_bound(A, b)
    assert check_balance(A, bound, b)
    x = [Fraction(data.draw(st.integers(-6, 6))) for _ in range(3)]
    x[i] = bound[i] + delta
    assert not check_balance(A, x, b)


@given(square(3), st.lists(st.one_of(st.just(BOTTOM), st.integers(-3, 3).map(Fraction)), min_size=3, max_size=3))
def test_cramer_report_matches_adjoint_route(A, b):
    assume(not is_singular(A))
    rep = cramer_report(A, b)
    assert rep.determinant == tropical_determinant(A)
    assert list(rep.permanents) == cramer_permanents(A, b)
    assert list(rep.upper_bound) == cramer_upper_bound(A, b)
    assert rep.singular == tuple(is_singular(cramer_matrix(A, b, i)) for i in range(3))


@given(st.lists(st.one_of(st.just(BOTTOM), st.integers(-3, 3).map(Fraction)), min_size=2, max_size=5))
def test_tp1_distinct_iff_general_position(values):
    distinct = len(set(values)) == len(values)
    assert distinct == general_position([value_vector(a) for a in values], 1)
