"""Exact continuous piecewise-linear functions of one real variable.

These are the tropical meromorphic functions: continuous, piecewise linear,
with rational breakpoints and slopes.  A :class:`PLFunction` comes in three
forms:

* ``GLOBAL``   -- defined on all of R, affine beyond the extreme breakpoints;
* ``WINDOWED`` -- defined only on a closed window ``[lo, hi]``;
* ``BOTTOM``   -- the constant ``0_T`` function.

Values are reconstructed by integrating slopes from one anchor sample, so a
jump cannot be represented.  All constructors return the canonical form
(sorted breakpoints, no equal neighbouring slopes, anchor at ``x = 0`` for
global functions and at ``x = lo`` for windowed ones), which makes ``==``
pointwise equality.
"""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Callable, Iterable, Sequence

from .core import BOTTOM, TropScalar, scalar
from .errors import (
    AllBottom,
    BottomConstantError,
    DivisionByBottom,
    InconsistentGenerator,
    OutOfWindow,
    UndefinedPower,
    WindowedForm,
    WindowMismatch,
)


class Form(enum.Enum):
    GLOBAL = "global"
    WINDOWED = "windowed"
    BOTTOM = "bottom"


@dataclass(frozen=True)
class SignedCrossing:
    """A slope jump: a root when ``jump > 0``, a pole when ``jump < 0``."""

    location: Fraction
    jump: Fraction

    def __post_init__(self):
        if self.jump == 0:
            raise ValueError("a crossing must have a nonzero jump")

    @property
    def multiplicity(self) -> Fraction:
        return abs(self.jump)


@dataclass(frozen=True)
class PLFunction:
    anchor: tuple
    breakpoints: tuple
    slopes: tuple
    window: tuple | None = None
    is_bottom: bool = False

    def __post_init__(self):
        if self.is_bottom:
            if self.breakpoints or self.slopes or self.window is not None:
                raise ValueError("the bottom function carries no pieces")
            return
        bps = self.breakpoints
        if len(self.slopes) != len(bps) + 1:
            raise ValueError("need exactly one slope per segment")
        if any(b0 >= b1 for b0, b1 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(s0 == s1 for s0, s1 in zip(self.slopes, self.slopes[1:])):
            raise ValueError("adjacent segments must have distinct slopes")
        if self.window is not None:
            lo, hi = self.window
            if not lo < hi:
                raise ValueError("window must satisfy lo < hi")
            if self.anchor[0] != lo:
                raise ValueError("windowed anchor must sit at the window start")
            if bps and not (lo < bps[0] and bps[-1] < hi):
                raise ValueError("breakpoints must lie inside the window")
        elif self.anchor[0] != 0:
            raise ValueError("global anchor must sit at x = 0")

    # -- construction -----------------------------------------------------

    @classmethod
    def _raw(cls, anchor, breakpoints, slopes, window=None) -> "PLFunction":
        obj = object.__new__(cls)
        object.__setattr__(obj, "anchor", anchor)
        object.__setattr__(obj, "breakpoints", tuple(breakpoints))
        object.__setattr__(obj, "slopes", tuple(slopes))
        object.__setattr__(obj, "window", window)
        object.__setattr__(obj, "is_bottom", False)
        return obj

    @classmethod
    def from_pieces(cls, anchor, breakpoints, slopes, window=None) -> "PLFunction":
        """Build a canonical function from any (possibly redundant) pieces.

        ``anchor`` is an ``(x, y)`` sample; for a windowed function it must be
        inside the window.
        """
        x0, y0 = Fraction(anchor[0]), Fraction(anchor[1])
        bps = [Fraction(b) for b in breakpoints]
        slopes = [Fraction(s) for s in slopes]
        if len(slopes) != len(bps) + 1:
            raise ValueError("need exactly one slope per segment")
        if any(b0 >= b1 for b0, b1 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if window is not None:
            lo, hi = Fraction(window[0]), Fraction(window[1])
            if not lo < hi:
                raise ValueError("window must satisfy lo < hi")
            if not lo <= x0 <= hi or any(not lo < b < hi for b in bps):
                raise ValueError("anchor and breakpoints must lie inside the window")
            window = (lo, hi)
        raw = cls._raw((x0, y0), bps, slopes, window)
        if window is None:
            xs = list(bps) or [x0]
            return _build_global(xs, [raw._eval(x) for x in xs], slopes[0], slopes[-1])
        xs = [window[0], *bps, window[1]]
        return _build_windowed(xs, [raw._eval(x) for x in xs])

    @classmethod
    def bottom(cls) -> "PLFunction":
        return BOTTOM_FUNCTION

    # -- inspection -------------------------------------------------------

    @property
    def form(self) -> Form:
        if self.is_bottom:
            return Form.BOTTOM
        return Form.GLOBAL if self.window is None else Form.WINDOWED

    @property
    def is_global(self) -> bool:
        return not self.is_bottom and self.window is None

    @property
    def is_windowed(self) -> bool:
        return self.window is not None

    @cached_property
    def _bp_values(self) -> tuple:
        bps, slopes = self.breakpoints, self.slopes
        if not bps:
            return ()
        x0, y0 = self.anchor
        k = bisect_right(bps, x0)  # segment holding the anchor
        vals = [None] * len(bps)
        if k < len(bps):
            vals[k] = y0 + slopes[k] * (bps[k] - x0)
            for i in range(k + 1, len(bps)):
                vals[i] = vals[i - 1] + slopes[i] * (bps[i] - bps[i - 1])
        if k > 0:
            vals[k - 1] = y0 - slopes[k] * (x0 - bps[k - 1])
        for i in range(k - 2, -1, -1):
            vals[i] = vals[i + 1] - slopes[i + 1] * (bps[i + 1] - bps[i])
        return tuple(vals)

    def _eval(self, x: Fraction) -> Fraction:
        bps = self.breakpoints
        if not bps:
            return self.anchor[1] + self.slopes[0] * (x - self.anchor[0])
        i = bisect_right(bps, x)
        vals = self._bp_values
        if i > 0:
            return vals[i - 1] + self.slopes[i] * (x - bps[i - 1])
        return vals[0] - self.slopes[0] * (bps[0] - x)

    def in_domain(self, x) -> bool:
        if self.window is None:
            return True
        return self.window[0] <= x <= self.window[1]

    def __call__(self, x) -> TropScalar:
        return evaluate(self, x)

    def slope_right_of(self, x) -> Fraction:
        return self.slopes[bisect_right(self.breakpoints, x)]

    def slope_left_of(self, x) -> Fraction:
        return self.slopes[bisect_left(self.breakpoints, x)]

    def knots(self) -> list:
        """``(x, f(x))`` at every breakpoint, plus window ends if windowed."""
        if self.is_bottom:
            return []
        pts = list(self.breakpoints)
        if self.window is not None:
            pts = [self.window[0], *pts, self.window[1]]
        return [(x, self._eval(x)) for x in pts]

    def __repr__(self) -> str:
        if self.is_bottom:
            return "PLFunction(BOTTOM)"
        w = "" if self.window is None else f", window=[{self.window[0]}, {self.window[1]}]"
        return (
            f"PLFunction(anchor=({self.anchor[0]}, {self.anchor[1]}), "
            f"breakpoints={[str(b) for b in self.breakpoints]}, "
            f"slopes={[str(s) for s in self.slopes]}{w})"
        )

    # -- sugar -------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, PLFunction):
            return add_combine(self, other)
        return add_constant(self, scalar(other))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PLFunction):
            return sub_combine(self, other)
        c = scalar(other)
        if c is BOTTOM:
            raise DivisionByBottom("subtracting 0_T")
        return add_constant(self, -c)

    def __neg__(self):
        return negate(self)

    def __or__(self, other):
        return max_combine(self, other)


BOTTOM_FUNCTION = PLFunction(anchor=(Fraction(0), Fraction(0)), breakpoints=(), slopes=(), is_bottom=True)


def _build_global(xs, ys, left_slope, right_slope) -> PLFunction:
    seg = [Fraction(left_slope)]
    for i in range(len(xs) - 1):
        seg.append((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]))
    seg.append(Fraction(right_slope))
    bps, vals, slopes = [], [], [seg[0]]
    for i, x in enumerate(xs):
        if seg[i + 1] != slopes[-1]:
            bps.append(x)
            vals.append(ys[i])
            slopes.append(seg[i + 1])
    if bps:
        k = bisect_right(bps, 0)
        if k > 0:
            y0 = vals[k - 1] - slopes[k] * bps[k - 1]
        else:
            y0 = vals[0] - slopes[0] * bps[0]
    else:
        y0 = ys[0] - slopes[0] * xs[0]
    return PLFunction._raw((Fraction(0), y0), bps, slopes)


def _build_windowed(xs, ys) -> PLFunction:
    seg = [(ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(xs) - 1)]
    bps, slopes = [], [seg[0]]
    for i in range(1, len(seg)):
        if seg[i] != slopes[-1]:
            bps.append(xs[i])
            slopes.append(seg[i])
    return PLFunction._raw((xs[0], ys[0]), bps, slopes, (xs[0], xs[-1]))


# -- basic constructors ---------------------------------------------------


def affine(slope, intercept) -> PLFunction:
    return PLFunction._raw((Fraction(0), Fraction(intercept)), (), (Fraction(slope),))


def constant(value) -> PLFunction:
    v = scalar(value)
    if v is BOTTOM:
        return BOTTOM_FUNCTION
    return affine(0, v)


IDENTITY = affine(1, 0)


def from_tropical_polynomial(terms: Iterable) -> PLFunction:
    """The entire function ``max_j (a_j + n_j x)`` from ``(a_j, n_j)`` pairs."""
    pieces = []
    for a, n in terms:
        a = scalar(a)
        if a is not BOTTOM:
            pieces.append(affine(Fraction(n), a))
    if not pieces:
        raise AllBottom("every coefficient of the tropical polynomial is 0_T")
    return max_all(pieces)


# -- evaluation -------------------------------------------------------------


def evaluate(f: PLFunction, x) -> TropScalar:
    if f.is_bottom:
        return BOTTOM
    x = Fraction(x)
    if not f.in_domain(x):
        raise OutOfWindow(f"x = {x} lies outside the window [{f.window[0]}, {f.window[1]}]")
    return f._eval(x)


# -- alignment of operands -----------------------------------------------------


def restrict(f: PLFunction, window) -> PLFunction:
    """Restrict ``f`` to ``window``; the window must lie inside f's domain."""
    if f.is_bottom:
        return f
    lo, hi = Fraction(window[0]), Fraction(window[1])
    if not lo < hi:
        raise ValueError("window must satisfy lo < hi")
    if f.window is not None and not (f.window[0] <= lo and hi <= f.window[1]):
        raise OutOfWindow(f"[{lo}, {hi}] is not inside [{f.window[0]}, {f.window[1]}]")
    xs = [lo, *(b for b in f.breakpoints if lo < b < hi), hi]
    return _build_windowed(xs, [f._eval(x) for x in xs])


def _align(f: PLFunction, g: PLFunction):
    if f.window is None and g.window is None:
        return f, g, None
    if f.window is not None and g.window is not None:
        if f.window != g.window:
            raise WindowMismatch(f"windows {f.window} and {g.window} differ")
        return f, g, f.window
    if f.window is None:
        return restrict(f, g.window), g, g.window
    return f, restrict(g, f.window), f.window


def _merged_points(f, g, window) -> list:
    pts = set(f.breakpoints) | set(g.breakpoints)
    if window is not None:
        pts |= set(window)
    pts = sorted(pts)
    if not pts:
        pts = [Fraction(0)]
    return pts


def _intervals(pts, window):
    if window is None:
        yield None, pts[0]
    for a, b in zip(pts, pts[1:]):
        yield a, b
    if window is None:
        yield pts[-1], None


def _pointwise(f, g, op, tail) -> PLFunction:
    f, g, window = _align(f, g)
    pts = _merged_points(f, g, window)
    ys = [op(f._eval(x), g._eval(x)) for x in pts]
    if window is None:
        return _build_global(pts, ys, tail(f.slopes[0], g.slopes[0]), tail(f.slopes[-1], g.slopes[-1]))
    return _build_windowed(pts, ys)


def max_combine(f: PLFunction, g: PLFunction) -> PLFunction:
    """Pointwise maximum (tropical sum)."""
    if f.is_bottom:
        return g
    if g.is_bottom:
        return f
    f, g, window = _align(f, g)
    pts = _merged_points(f, g, window)
    extra = []
    for a, b in _intervals(pts, window):
        if a is None:
            sf, sg, ref = f.slopes[0], g.slopes[0], b
        elif b is None:
            sf, sg, ref = f.slopes[-1], g.slopes[-1], a
        else:
            sf, sg, ref = f.slope_right_of(a), g.slope_right_of(a), a
        if sf == sg:
            continue
        x = ref - (f._eval(ref) - g._eval(ref)) / (sf - sg)
        if (a is None or a < x) and (b is None or x < b):
            extra.append(x)
    if extra:
        pts = sorted(pts + extra)
    ys = [max(f._eval(x), g._eval(x)) for x in pts]
    if window is not None:
        return _build_windowed(pts, ys)
    left = pts[0] - 1
    fl, gl = f._eval(left), g._eval(left)
    sl = f.slopes[0] if fl > gl else g.slopes[0] if gl > fl else min(f.slopes[0], g.slopes[0])
    right = pts[-1] + 1
    fr, gr = f._eval(right), g._eval(right)
    sr = f.slopes[-1] if fr > gr else g.slopes[-1] if gr > fr else max(f.slopes[-1], g.slopes[-1])
    return _build_global(pts, ys, sl, sr)


def min_combine(f: PLFunction, g: PLFunction) -> PLFunction:
    if f.is_bottom or g.is_bottom:
        return BOTTOM_FUNCTION
    return negate(max_combine(negate(f), negate(g)))


def add_combine(f: PLFunction, g: PLFunction) -> PLFunction:
    """Pointwise sum (tropical product)."""
    if f.is_bottom or g.is_bottom:
        return BOTTOM_FUNCTION
    return _pointwise(f, g, lambda u, v: u + v, lambda s, t: s + t)


def sub_combine(f: PLFunction, g: PLFunction) -> PLFunction:
    """Pointwise difference (tropical quotient ``f / g``)."""
    if g.is_bottom:
        raise DivisionByBottom("dividing by the 0_T function")
    if f.is_bottom:
        return BOTTOM_FUNCTION
    return _pointwise(f, g, lambda u, v: u - v, lambda s, t: s - t)


def _balanced(fs: Sequence[PLFunction], op) -> PLFunction:
    fs = list(fs)
    while len(fs) > 1:
        fs = [op(fs[i], fs[i + 1]) if i + 1 < len(fs) else fs[i] for i in range(0, len(fs), 2)]
    return fs[0]


def max_all(fs: Iterable[PLFunction]) -> PLFunction:
    fs = list(fs)
    if not fs:
        return BOTTOM_FUNCTION
    return _balanced(fs, max_combine)


def sum_all(fs: Iterable[PLFunction]) -> PLFunction:
    fs = list(fs)
    if not fs:
        return constant(0)
    return _balanced(fs, add_combine)


# -- unary transforms ---------------------------------------------------------


def add_constant(f: PLFunction, c: TropScalar) -> PLFunction:
    """``c (x) f``, i.e. ``f + c``."""
    if f.is_bottom or c is BOTTOM:
        return BOTTOM_FUNCTION
    c = Fraction(c)
    return PLFunction._raw((f.anchor[0], f.anchor[1] + c), f.breakpoints, f.slopes, f.window)


def scale(f: PLFunction, alpha) -> PLFunction:
    """``f^(x) alpha``, i.e. ``alpha * f``."""
    alpha = Fraction(alpha)
    if f.is_bottom:
        if alpha > 0:
            return f
        raise UndefinedPower(f"0_T raised to {alpha} is undefined")
    if alpha == 0:
        if f.window is None:
            return constant(0)
        return PLFunction._raw((f.window[0], Fraction(0)), (), (Fraction(0),), f.window)
    return PLFunction._raw(
        (f.anchor[0], alpha * f.anchor[1]), f.breakpoints, tuple(alpha * s for s in f.slopes), f.window
    )


def negate(f: PLFunction) -> PLFunction:
    """``1_T / f``."""
    if f.is_bottom:
        raise DivisionByBottom("1_T / 0_T is undefined")
    return scale(f, -1)


def positive_part(f: PLFunction) -> PLFunction:
    """``f^+ = max(f, 0)``."""
    if f.is_bottom:
        return constant(0) if f.window is None else f
    return max_combine(f, constant(0))


def shift(f: PLFunction, c) -> PLFunction:
    """``g(x) = f(x + c)``."""
    c = Fraction(c)
    if f.is_bottom or c == 0:
        return f
    if f.window is None:
        xs = [b - c for b in f.breakpoints] or [Fraction(0)]
        ys = [f._eval(x + c) for x in xs]
        return _build_global(xs, ys, f.slopes[0], f.slopes[-1])
    lo, hi = f.window
    return PLFunction._raw(
        (lo - c, f.anchor[1]), tuple(b - c for b in f.breakpoints), f.slopes, (lo - c, hi - c)
    )


def reflect(f: PLFunction) -> PLFunction:
    """``g(x) = f(-x)``."""
    if f.is_bottom:
        return f
    bps = tuple(-b for b in reversed(f.breakpoints))
    slopes = tuple(-s for s in reversed(f.slopes))
    if f.window is None:
        return _build_global(list(bps) or [Fraction(0)], [f._eval(-x) for x in (bps or (Fraction(0),))],
                             slopes[0], slopes[-1])
    lo, hi = f.window
    return PLFunction._raw((-hi, f._eval(hi)), bps, slopes, (-hi, -lo))


# -- crossings and asymptotics ---------------------------------------------


def crossings(f: PLFunction) -> list:
    """All slope jumps ``omega_f`` of ``f`` in increasing order of location."""
    if f.is_bottom:
        return []
    return [
        SignedCrossing(b, f.slopes[i + 1] - f.slopes[i]) for i, b in enumerate(f.breakpoints)
    ]


def roots(f: PLFunction) -> list:
    return [c for c in crossings(f) if c.jump > 0]


def poles(f: PLFunction) -> list:
    return [c for c in crossings(f) if c.jump < 0]


def is_entire(f: PLFunction) -> bool:
    return not poles(f)


def asymptotic_slopes(f: PLFunction) -> tuple:
    """Slopes of the left and right affine tails of a global function."""
    if f.is_bottom:
        raise BottomConstantError("the 0_T function has no tails")
    if f.window is not None:
        raise WindowedForm("a windowed function has no tails")
    return f.slopes[0], f.slopes[-1]


def minimum(f: PLFunction):
    """Exact infimum of ``f`` over its domain, or ``None`` if unbounded below."""
    if f.is_bottom:
        return BOTTOM
    if f.window is None and (f.slopes[0] > 0 or f.slopes[-1] < 0):
        return None
    knots = f.knots() or [(f.anchor[0], f.anchor[1])]
    return min(y for _, y in knots)


def is_nonnegative(f: PLFunction) -> bool:
    m = minimum(f)
    return m is not None and m is not BOTTOM and m >= 0


def domain_radius(f: PLFunction):
    """Largest ``R`` with ``[-R, R]`` inside the domain (``None`` when global)."""
    if f.window is None:
        return None
    return min(f.window[1], -f.window[0])


# -- generators with infinitely many breakpoints --------------------------------


def windowed_from_generator(gen: Callable, breakpoints: Iterable, window) -> PLFunction:
    """Materialise ``gen`` on ``window`` given every breakpoint it can have there.

    ``gen`` maps Fractions to Fractions.  Each declared piece is probed at two
    interior points; a generator that is not affine between the declared
    breakpoints, or that jumps at one of them, raises InconsistentGenerator.
    """
    lo, hi = Fraction(window[0]), Fraction(window[1])
    if not lo < hi:
        raise ValueError("window must satisfy lo < hi")
    inner = sorted({Fraction(b) for b in breakpoints if lo < Fraction(b) < hi})
    xs = [lo, *inner, hi]
    ys = [Fraction(gen(x)) for x in xs]
    for (x0, y0), (x1, y1) in zip(zip(xs, ys), zip(xs[1:], ys[1:])):
        slope = (y1 - y0) / (x1 - x0)
        for t in (Fraction(1, 3), Fraction(2, 3)):
            x = x0 + t * (x1 - x0)
            if Fraction(gen(x)) != y0 + slope * (x - x0):
                raise InconsistentGenerator(
                    f"generator is not affine and continuous on [{x0}, {x1}] (probe at {x})"
                )
    return _build_windowed(xs, ys)


def e2(x) -> Fraction:
    """``2^[x] (x - [x] + 1)``: entire, slope ``2^k`` on ``[k, k+1]``."""
    x = Fraction(x)
    k = x.numerator // x.denominator
    p = Fraction(2) ** k
    return p * (x - k + 1)


def e2_function(window) -> PLFunction:
    lo, hi = Fraction(window[0]), Fraction(window[1])
    lattice = range(int(lo) - 1, int(hi) + 2)
    return windowed_from_generator(e2, lattice, (lo, hi))
