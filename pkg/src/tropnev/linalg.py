"""Tropical matrices: determinants with a uniqueness certificate, adjoints,
Cramer bounds, linear independence and general position of hyperplanes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .core import BOTTOM, TropScalar, format_scalar, scalar, tadd, tmul
from .errors import (
    DimensionMismatch,
    NotSquareFamily,
    SingularMatrix,
    TooFew,
    TooLarge,
    TooSmall,
)

MAX_DET_SIDE = 10


@dataclass(frozen=True)
class TropMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("a tropical matrix needs at least one row and column")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "TropMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), width, tuple(scalar(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "TropMatrix":
        cols = [list(c) for c in cols]
        if not cols or not cols[0]:
            raise ValueError("empty matrix")
        height = len(cols[0])
        if any(len(c) != height for c in cols):
            raise DimensionMismatch("vectors of different lengths")
        return cls.from_rows([[c[i] for c in cols] for i in range(height)])

    @classmethod
    def identity(cls, n: int) -> "TropMatrix":
        return cls.from_rows([[Fraction(0) if i == j else BOTTOM for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> TropScalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "TropMatrix":
        return TropMatrix.from_rows([list(self.column(j)) for j in range(self.cols)])

    def minor(self, i: int, j: int) -> "TropMatrix":
        """Delete row ``i`` and column ``j``."""
        return TropMatrix.from_rows(
            [[x for c, x in enumerate(self.row(r)) if c != j] for r in range(self.rows) if r != i]
        )

    def with_column(self, j: int, b: Sequence) -> "TropMatrix":
        rows = self.to_rows()
        if len(b) != self.rows:
            raise DimensionMismatch("replacement column has the wrong length")
        for i in range(self.rows):
            rows[i][j] = scalar(b[i])
        return TropMatrix.from_rows(rows)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(format_scalar(x) for x in self.row(i)) + "]"
                               for i in range(self.rows)) + "]"


@dataclass(frozen=True)
class DetCertificate:
    """Tropical determinant together with how often the maximum is attained.

    ``multiplicity`` counts optimal permutations among those with a finite
    product; it is 0 exactly when every permutation product is 0_T.
    """

    value: TropScalar
    multiplicity: int
    witness: tuple | None

    @property
    def is_unique(self) -> bool:
        return self.multiplicity == 1


def _as_matrix(A) -> TropMatrix:
    return A if isinstance(A, TropMatrix) else TropMatrix.from_rows(A)


def tropical_determinant(A, max_side: int = MAX_DET_SIDE) -> DetCertificate:
    """Max over permutations of entry sums, with an optimal-permutation count.

    Dynamic programming over the set of used columns: state ``mask`` holds the
    best partial sum of rows ``0..|mask|-1`` placed on columns ``mask`` and the
    number of partial assignments reaching it.  Exact rationals make the count
    of ties exact.
    """
    A = _as_matrix(A)
    if not A.is_square:
        raise DimensionMismatch(f"determinant of a non-square {A.rows}x{A.cols} matrix")
    n = A.rows
    if n > max_side:
        raise TooLarge(f"side {n} exceeds the configured limit {max_side}")
    best = {0: (Fraction(0), 1)}
    back = {}
    for mask in range(1 << n):
        state = best.get(mask)
        if state is None:
            continue
        val, cnt = state
        i = bin(mask).count("1")
        if i == n:
            continue
        for j in range(n):
            bit = 1 << j
            if mask & bit:
                continue
            a = A[i, j]
            if a is BOTTOM:
                continue
            cand = val + a
            nxt = mask | bit
            cur = best.get(nxt)
            if cur is None or cand > cur[0]:
                best[nxt] = (cand, cnt)
                back[nxt] = (mask, j)
            elif cand == cur[0]:
                best[nxt] = (cand, cur[1] + cnt)
    full = (1 << n) - 1
    if full not in best:
        return DetCertificate(BOTTOM, 0, None)
    value, count = best[full]
    witness = [0] * n
    mask = full
    for i in range(n - 1, -1, -1):
        prev, j = back[mask]
        witness[i] = j
        mask = prev
    return DetCertificate(value, count, tuple(witness))


def is_singular(A, max_side: int = MAX_DET_SIDE) -> bool:
    """Tropically singular: the determinant's maximum is attained at least twice
    (a matrix whose permutation products are all 0_T counts as singular)."""
    return not tropical_determinant(A, max_side).is_unique


def adjoint(A) -> TropMatrix:
    """``[adj A]_{i,j} = |A_{j,i}|``."""
    A = _as_matrix(A)
    if not A.is_square:
        raise DimensionMismatch("adjoint of a non-square matrix")
    if A.rows < 2:
        raise TooSmall("the adjoint needs side at least 2")
    n = A.rows
    return TropMatrix.from_rows(
        [[tropical_determinant(A.minor(j, i)).value for j in range(n)] for i in range(n)]
    )


def tmat_mul(A, B) -> TropMatrix:
    A, B = _as_matrix(A), _as_matrix(B)
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    out = []
    for i in range(A.rows):
        row = []
        for j in range(B.cols):
            acc = BOTTOM
            for k in range(A.cols):
                acc = tadd(acc, tmul(A[i, k], B[k, j]))
            row.append(acc)
        out.append(row)
    return TropMatrix.from_rows(out)


def tmat_vec(A, x: Sequence) -> list:
    A = _as_matrix(A)
    if len(x) != A.cols:
        raise DimensionMismatch("vector length does not match matrix columns")
    col = TropMatrix.from_rows([[v] for v in x])
    return list(tmat_mul(A, col).column(0))


def cramer_matrix(A, b: Sequence, i: int) -> TropMatrix:
    """``A`` with column ``i`` replaced by ``b``."""
    return _as_matrix(A).with_column(i, b)


def cramer_permanents(A, b: Sequence) -> list:
    A = _as_matrix(A)
    return [tropical_determinant(cramer_matrix(A, b, i)).value for i in range(A.cols)]


def cramer_upper_bound(A, b: Sequence) -> list:
    """Componentwise bound ``(adj(A) b)_i - |A|`` on balanced solutions."""
    A = _as_matrix(A)
    if not A.is_square:
        raise DimensionMismatch("Cramer systems need a square matrix")
    b = [scalar(v) for v in b]
    if len(b) != A.rows:
        raise DimensionMismatch("right-hand side has the wrong length")
    det = tropical_determinant(A)
    if not det.is_unique:
        raise SingularMatrix("the Cramer bound needs a tropically nonsingular matrix")
    if A.rows == 1:
        adj_b = b
    else:
        adj_b = tmat_vec(adjoint(A), b)
    return [BOTTOM if v is BOTTOM else v - det.value for v in adj_b]


def _attained_twice(terms) -> bool:
    top = BOTTOM
    hits = 0
    for t in terms:
        if t > top:
            top, hits = t, 1
        elif t == top and t is not BOTTOM:
            hits += 1
    return top is BOTTOM or hits >= 2


@dataclass(frozen=True)
class CramerReport:
    determinant: DetCertificate
    permanents: tuple
    singular: tuple
    upper_bound: tuple


def cramer_report(A, b: Sequence) -> CramerReport:
    """``|A|``, each ``|B_i|`` with its singularity, and the bound ``|B_i| - |A|``.

    One determinant per matrix: ``(adj(A) b)_i`` expands ``|B_i|`` along
    column ``i``, so the bound reuses the permanents.
    """
    A = _as_matrix(A)
    if not A.is_square:
        raise DimensionMismatch("Cramer systems need a square matrix")
    b = [scalar(v) for v in b]
    if len(b) != A.rows:
        raise DimensionMismatch("right-hand side has the wrong length")
    det = tropical_determinant(A)
    if not det.is_unique:
        raise SingularMatrix("the Cramer bound needs a tropically nonsingular matrix")
    certs = [tropical_determinant(A.with_column(i, b)) for i in range(A.cols)]
    perms = tuple(c.value for c in certs)
    bound = tuple(BOTTOM if v is BOTTOM else v - det.value for v in perms)
    return CramerReport(det, perms, tuple(not c.is_unique for c in certs), bound)


def check_balance(A, x: Sequence, b: Sequence) -> bool:
    """Every row's max over ``{a_ij + x_j} U {b_i}`` is attained at least twice."""
    A = _as_matrix(A)
    x = [scalar(v) for v in x]
    b = [scalar(v) for v in b]
    if len(x) != A.cols or len(b) != A.rows:
        raise DimensionMismatch("dimensions of A, x and b do not agree")
    for i in range(A.rows):
        terms = [tmul(A[i, j], x[j]) for j in range(A.cols)] + [b[i]]
        if not _attained_twice(terms):
            return False
    return True


def vectors_independent(vectors: Sequence[Sequence]) -> bool:
    """Square families only: ``n+1`` vectors of ``T^{n+1}`` are independent
    iff the matrix having them as columns is tropically nonsingular."""
    vectors = [list(v) for v in vectors]
    if not vectors or any(len(v) != len(vectors) for v in vectors):
        raise NotSquareFamily("need exactly n+1 vectors of length n+1")
    return not is_singular(TropMatrix.from_columns(vectors))


def _coefficients(h) -> list:
    return list(getattr(h, "coefficients", h))


def general_position(hyperplanes: Sequence, n: int) -> bool:
    """Every ``n+1`` of the coefficient vectors form a nonsingular matrix."""
    vecs = [_coefficients(h) for h in hyperplanes]
    if any(len(v) != n + 1 for v in vecs):
        raise DimensionMismatch(f"hyperplanes of TP^{n} need {n + 1} coefficients")
    if len(vecs) < n + 1:
        raise TooFew(f"general position in TP^{n} needs at least {n + 1} hyperplanes")
    return all(vectors_independent(sub) for sub in combinations(vecs, n + 1))


def value_vector(a) -> tuple:
    """Coefficient vector ``(a, 1_T)`` of the TP^1 value ``a`` in ``T``; the
    associated polynomial is ``a (x) x_0 (+) x_1``."""
    return (scalar(a), Fraction(0))
