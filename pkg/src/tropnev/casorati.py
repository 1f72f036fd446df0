"""Tropical Casorati determinants ``C(f_0, ..., f_n)`` as PL functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import plfun
from .errors import TooLarge, WindowMismatch, WindowTooSmall
from .plfun import PLFunction

MAX_CASORATI_SIZE = 7


@dataclass(frozen=True)
class CasoratiSpec:
    functions: tuple
    shift: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "shift", Fraction(self.shift))
        if self.shift == 0:
            raise ValueError("the shift c must be nonzero")
        if not self.functions:
            raise ValueError("need at least one function")

    @property
    def n(self) -> int:
        return len(self.functions) - 1


def _common_window(fns):
    windows = {f.window for f in fns if f.window is not None}
    if len(windows) > 1:
        raise WindowMismatch(f"functions live on different windows: {sorted(windows)}")
    return windows.pop() if windows else None


def casorati_window(window, n: int, c: Fraction):
    """Window on which every ``f_j(x + kc)``, ``0 <= k <= n``, is defined."""
    if window is None:
        return None
    lo, hi = window
    if c > 0:
        lo2, hi2 = lo, hi - n * c
    else:
        lo2, hi2 = lo - n * c, hi
    if not lo2 < hi2:
        raise WindowTooSmall(f"window [{lo}, {hi}] is too small for {n} shifts by {c}")
    return (lo2, hi2)


def shifted_rows(spec: CasoratiSpec) -> list:
    """``rows[j][k] = f_j(x + kc)`` on the common Casorati window."""
    window = casorati_window(_common_window(spec.functions), spec.n, spec.shift)
    rows = []
    for f in spec.functions:
        row = []
        for k in range(spec.n + 1):
            g = plfun.shift(f, k * spec.shift)
            if window is not None and not g.is_bottom:
                g = plfun.restrict(g, window)
            row.append(g)
        rows.append(row)
    return rows


def casorati(spec: CasoratiSpec) -> PLFunction:
    """``max_pi sum_j f_j(x + pi(j) c)``.

    Evaluated by dynamic programming over the set of used shifts, which gives
    the same max-plus sum as enumerating permutations because ``+``
    distributes over ``max``.
    """
    size = spec.n + 1
    if size > MAX_CASORATI_SIZE:
        raise TooLarge(f"{size} functions exceed the Casorati limit {MAX_CASORATI_SIZE}")
    if any(f.is_bottom for f in spec.functions):
        casorati_window(_common_window(spec.functions), spec.n, spec.shift)
        return plfun.BOTTOM_FUNCTION
    rows = shifted_rows(spec)
    best = {0: None}
    for mask in range(1, 1 << size):
        j = bin(mask).count("1") - 1
        cands = []
        for k in range(size):
            if mask & (1 << k):
                prev = best[mask ^ (1 << k)]
                cands.append(rows[j][k] if prev is None else plfun.add_combine(prev, rows[j][k]))
        best[mask] = plfun.max_all(cands)
    return best[(1 << size) - 1]


def _on_common_window(f: PLFunction, g: PLFunction):
    if f.window is None or g.window is None or f.window == g.window:
        return f, g
    lo = max(f.window[0], g.window[0])
    hi = min(f.window[1], g.window[1])
    if not lo < hi:
        raise WindowTooSmall("the two sides share no window")
    return plfun.restrict(f, (lo, hi)), plfun.restrict(g, (lo, hi))


@dataclass
class CasoratiPropertyReport:
    symmetry: bool
    one_dominates_shift: bool
    bottom_absorbs: bool
    multiplicative: bool | None
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in
                   (self.symmetry, self.one_dominates_shift, self.bottom_absorbs, self.multiplicative))


def casorati_properties_check(spec: CasoratiSpec, h: PLFunction | None = None) -> CasoratiPropertyReport:
    """Check the four structural properties on one tuple.

    (i) swapping two components leaves C unchanged; (ii) with the first
    component replaced by the constant 0, C dominates the Casorati determinant
    of the shifted remaining components; (iii) a 0_T component forces 0_T;
    (iv) multiplying every component by an entire ``h`` multiplies C by
    ``h(x) + h(x+c) + ... + h(x+nc)``.  (iv) is skipped when ``h`` is None.
    """
    fns = list(spec.functions)
    c = spec.shift
    base = casorati(spec)

    symmetric = True
    for i in range(len(fns)):
        for j in range(i + 1, len(fns)):
            swapped = list(fns)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            if casorati(CasoratiSpec(swapped, c)) != base:
                symmetric = False

    window = _common_window(fns)
    one = plfun.constant(0) if window is None else plfun.restrict(plfun.constant(0), window)
    if len(fns) == 1:
        dominates = True
    else:
        lhs = casorati(CasoratiSpec([one] + fns[1:], c))
        rhs = casorati(CasoratiSpec([plfun.shift(f, c) for f in fns[1:]], c))
        lhs, rhs = _on_common_window(lhs, rhs)
        dominates = plfun.is_nonnegative(plfun.sub_combine(lhs, rhs))

    bottom_spec = CasoratiSpec([plfun.BOTTOM_FUNCTION] + fns[1:], c)
    absorbs = casorati(bottom_spec).is_bottom

    multiplicative = None
    if h is not None:
        lhs = casorati(CasoratiSpec([plfun.add_combine(f, h) for f in fns], c))
        shifts = [plfun.shift(h, k * c) for k in range(len(fns))]
        if lhs.window is not None:
            shifts = [plfun.restrict(g, lhs.window) for g in shifts]
        rhs = base if base.is_bottom else plfun.add_combine(plfun.sum_all(shifts), base)
        multiplicative = lhs == rhs
    return CasoratiPropertyReport(symmetric, dominates, absorbs, multiplicative)


def casorati_by_permutations(fns: Sequence[PLFunction], c, x) -> object:
    """Pointwise reference value via the scalar shift matrix at ``x``."""
    from .linalg import tropical_determinant

    c = Fraction(c)
    x = Fraction(x)
    n = len(fns) - 1
    matrix = [[plfun.evaluate(f, x + k * c) for k in range(n + 1)] for f in fns]
    return tropical_determinant(matrix).value
