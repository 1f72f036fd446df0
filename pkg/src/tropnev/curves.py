"""Tropical holomorphic curves into TP^n and tropical hyperplanes.

A :class:`Curve` is a reduced representation ``(f_0, ..., f_n)``: entire
components without a common root.  A :class:`Hyperplane` is a coefficient
vector ``a`` whose polynomial is ``P(x) = max_i (a_i + x_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice, product
from typing import Iterable, Sequence

from . import plfun
from .core import BOTTOM, TropScalar, scalar
from .errors import (
    AllBottomWitness,
    DegenerateComposition,
    DimensionMismatch,
    NotReduced,
    WindowMismatch,
)
from .plfun import PLFunction


@dataclass(frozen=True)
class Hyperplane:
    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(scalar(a) for a in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) < 2:
            raise ValueError("a hyperplane of TP^n needs n+1 >= 2 coefficients")
        if all(a is BOTTOM for a in coeffs):
            raise ValueError("a hyperplane needs at least one real coefficient")

    @property
    def dimension(self) -> int:
        return len(self.coefficients) - 1

    @property
    def norm(self) -> Fraction:
        """``||a|| = max_i a_i``."""
        return max(a for a in self.coefficients if a is not BOTTOM)

    @property
    def is_complete(self) -> bool:
        """All coefficients real."""
        return all(a is not BOTTOM for a in self.coefficients)

    def __call__(self, point: Sequence) -> TropScalar:
        out = BOTTOM
        for a, x in zip(self.coefficients, point):
            if a is not BOTTOM and x is not BOTTOM and (out is BOTTOM or a + x > out):
                out = a + x
        return out

    def contains(self, point: Sequence) -> bool:
        """Whether the max defining ``P(point)`` is attained at least twice."""
        terms = [a + x for a, x in zip(self.coefficients, point) if a is not BOTTOM and x is not BOTTOM]
        if not terms:
            return True
        top = max(terms)
        return terms.count(top) >= 2


def coordinate_hyperplane(i: int, n: int) -> Hyperplane:
    """``P(x) = x_i``."""
    return Hyperplane(tuple(Fraction(0) if j == i else BOTTOM for j in range(n + 1)))


def _common_window(fns: Sequence[PLFunction]):
    windows = {f.window for f in fns if f.window is not None}
    if len(windows) > 1:
        raise WindowMismatch(f"components live on different windows: {sorted(windows)}")
    return windows.pop() if windows else None


def reduced_check(F) -> bool:
    """True iff no location is a root of every component."""
    fns = F.components if isinstance(F, Curve) else list(F)
    common = None
    for f in fns:
        locs = {c.location for c in plfun.roots(f)}
        common = locs if common is None else common & locs
        if not common:
            return True
    return not common


@dataclass(frozen=True)
class Curve:
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) < 2:
            raise ValueError("a curve into TP^n needs n+1 >= 2 components")
        if all(f.is_bottom for f in comps):
            raise ValueError("not every component may be 0_T")
        window = _common_window(comps)
        if window is not None:
            comps = tuple(plfun.restrict(f, window) if f.is_global else f for f in comps)
        for i, f in enumerate(comps):
            if plfun.poles(f):
                raise ValueError(f"component {i} has poles; curve components must be entire")
        object.__setattr__(self, "components", comps)

    @classmethod
    def reduced(cls, components: Iterable[PLFunction]) -> "Curve":
        """Build a curve, insisting on a reduced representation."""
        F = cls(tuple(components))
        if not reduced_check(F):
            raise NotReduced("components share a common root")
        return F

    @property
    def n(self) -> int:
        return len(self.components) - 1

    @property
    def window(self):
        return _common_window(self.components)

    @property
    def is_global(self) -> bool:
        return self.window is None

    def __call__(self, x) -> tuple:
        return tuple(plfun.evaluate(f, x) for f in self.components)

    def norm_at(self, x) -> Fraction:
        """``||f(x)|| = max_i f_i(x)``."""
        return max(v for v in self(x) if v is not BOTTOM)

    def norm_function(self) -> PLFunction:
        return plfun.max_all(self.components)

    def translate(self, lam) -> "Curve":
        """Equivalent representation ``(lam + f_0, ..., lam + f_n)``."""
        lam = Fraction(lam)
        return Curve(tuple(plfun.add_constant(f, lam) for f in self.components))

    def radius(self):
        lo_hi = self.window
        return None if lo_hi is None else min(lo_hi[1], -lo_hi[0])


def compose(H: Hyperplane, F: Curve) -> PLFunction:
    """``P o f = max_i (a_i + f_i)``."""
    if H.dimension != F.n:
        raise DimensionMismatch(f"hyperplane in TP^{H.dimension} but curve in TP^{F.n}")
    terms = [plfun.add_constant(f, a) for a, f in zip(H.coefficients, F.components)
             if a is not BOTTOM and not f.is_bottom]
    return plfun.max_all(terms)


# -- tropical linear dependence of functions ------------------------------------


def _restrict_all(fns, window):
    if window is None:
        return list(fns), _common_window(fns)
    return [plfun.restrict(f, window) for f in fns], (Fraction(window[0]), Fraction(window[1]))


def _test_points(fns: Sequence[PLFunction], window) -> list:
    """Points at which the pairwise order of the given functions can change,
    together with one representative inside every elementary interval."""
    pts = set()
    for f in fns:
        pts.update(f.breakpoints)
    if window is not None:
        pts.update(window)
    pts = sorted(pts) or [Fraction(0)]
    bounds = list(zip(pts, pts[1:]))
    if window is None:
        bounds = [(None, pts[0])] + bounds + [(pts[-1], None)]
    extra = set()
    for a, b in bounds:
        ref = a if a is not None else b
        lines = []
        for f in fns:
            s = f.slopes[0] if a is None else f.slope_right_of(a)
            lines.append((s, f._eval(ref)))
        for (s1, v1), (s2, v2) in combinations(lines, 2):
            if s1 != s2:
                x = ref - (v1 - v2) / (s1 - s2)
                if (a is None or a < x) and (b is None or x < b):
                    extra.add(x)
    crit = sorted(set(pts) | extra)
    tests = list(crit)
    tests += [(u + v) / 2 for u, v in zip(crit, crit[1:])]
    if window is None:
        tests += [crit[0] - 1, crit[-1] + 1]
    return sorted(tests)


def _max_twice(values) -> bool:
    top, hits = BOTTOM, 0
    for v in values:
        if v > top:
            top, hits = v, 1
        elif v == top and v is not BOTTOM:
            hits += 1
    return top is BOTTOM or hits >= 2


def verify_dependence_witness(fns: Sequence[PLFunction], alpha: Sequence, window=None) -> bool:
    """Whether ``max_i (alpha_i + f_i(x))`` is attained at least twice for every x.

    Decided exactly: between consecutive breakpoints and pairwise crossings
    all terms are affine with a fixed order, so one interior point per
    elementary interval plus the critical points themselves cover the domain.
    """
    alpha = [scalar(a) for a in alpha]
    if len(alpha) != len(fns):
        raise DimensionMismatch("one witness coefficient per function")
    if all(a is BOTTOM for a in alpha):
        raise AllBottomWitness("a dependence witness needs a real coefficient")
    fns, window = _restrict_all(fns, window)
    terms = [plfun.add_constant(f, a) for a, f in zip(alpha, fns) if a is not BOTTOM and not f.is_bottom]
    if not terms:
        return True  # every term is 0_T everywhere
    if len(terms) == 1:
        return False
    return all(_max_twice([t._eval(x) for t in terms]) for x in _test_points(terms, window))


def default_candidates(F, bound: int = 3, limit: int = 20000) -> list:
    """Candidate witness vectors for :func:`nondegenerate_witnessed`.

    The first real coefficient is normalised to 0; the others range over the
    integers in ``[-bound, bound]``, over ``f_k(b) - f_i(b)`` for breakpoints
    ``b`` of the components (which is where witnesses of piecewise-linear
    families are pinned), and over 0_T.  At most ``limit`` vectors.
    """
    fns = F.components if isinstance(F, Curve) else list(F)
    m = len(fns)
    window = _common_window(fns)
    sites = {Fraction(0)} if window is None or window[0] <= 0 <= window[1] else {window[0]}
    for f in fns:
        sites.update(f.breakpoints)
    sites = sorted(sites)
    grid = {Fraction(v) for v in range(-bound, bound + 1)}
    out = []
    for k in range(m):
        if fns[k].is_bottom:
            continue
        choices = []
        for i in range(m):
            if i < k:
                choices.append([BOTTOM])
            elif i == k:
                choices.append([Fraction(0)])
            else:
                vals = set(grid)
                if not fns[i].is_bottom:
                    vals.update(fns[k]._eval(b) - fns[i]._eval(b) for b in sites)
                choices.append(sorted(vals) + [BOTTOM])
        out.extend(islice(product(*choices), max(0, limit - len(out))))
        if len(out) >= limit:
            break
    return out


def find_dependence_witness(F, candidates=None):
    """The first candidate that verifies as a dependence witness, or None."""
    fns = F.components if isinstance(F, Curve) else list(F)
    window = _common_window(fns)
    if candidates is None:
        candidates = default_candidates(fns)
    probes = _test_points([f for f in fns if not f.is_bottom] or fns, window)
    table = [[BOTTOM if f.is_bottom else f._eval(x) for f in fns] for x in probes]
    for alpha in candidates:
        alpha = [scalar(a) for a in alpha]
        if all(a is BOTTOM for a in alpha):
            continue
        # cheap filter on fixed probes before the exact check
        if not all(_max_twice([BOTTOM if a is BOTTOM or v is BOTTOM else a + v
                                for a, v in zip(alpha, row)]) for row in table):
            continue
        if verify_dependence_witness(fns, alpha):
            return tuple(alpha)
    return None


def nondegenerate_witnessed(F, candidates=None) -> bool:
    """True iff no candidate verifies as a dependence witness.

    True is relative to the candidate set; False is a proof of degeneracy.
    """
    return find_dependence_witness(F, candidates) is None


def tail_certificate(F: Curve) -> bool:
    """A sufficient, exact test of nondegeneracy for global curves.

    If for every set ``S`` of at least two components the largest right-tail
    slope, or the smallest left-tail slope, is attained by a single member of
    ``S``, then every real combination over ``S`` has a unique maximum far out
    on that side, so no witness exists.
    """
    if not F.is_global or any(f.is_bottom for f in F.components):
        return False
    tails = [plfun.asymptotic_slopes(f) for f in F.components]
    for size in range(2, len(tails) + 1):
        for S in combinations(tails, size):
            rights = [t[1] for t in S]
            lefts = [t[0] for t in S]
            if rights.count(max(rights)) == 1 or lefts.count(min(lefts)) == 1:
                continue
            return False
    return True


def is_nondegenerate(F: Curve, candidates=None) -> bool:
    """Tail certificate first, then the witness search."""
    return tail_certificate(F) or nondegenerate_witnessed(F, candidates)


# -- representation length and degeneracy counts ------------------------------------


def representation_length(H: Hyperplane, F: Curve) -> int:
    """Fewest real-coefficient terms of ``H`` whose max already equals ``P o f``."""
    target = compose(H, F)
    if target.is_bottom:
        raise DegenerateComposition("P o f is identically 0_T")
    idx = [i for i, (a, f) in enumerate(zip(H.coefficients, F.components))
           if a is not BOTTOM and not f.is_bottom]
    terms = {i: plfun.add_constant(F.components[i], H.coefficients[i]) for i in idx}
    for k in range(1, len(idx) + 1):
        for S in combinations(idx, k):
            if plfun.max_all(terms[i] for i in S) == target:
                return k
    return len(idx)  # unreachable: the full index set reproduces the target


def ddg(specs: Iterable[Hyperplane], F: Curve) -> int:
    """Number of non-complete combinations (representation length < n+1)."""
    return sum(1 for H in specs if representation_length(H, F) < F.n + 1)


def ddg_star(specs: Iterable[Hyperplane], F: Curve) -> int:
    """Number of combinations that reduce to a single term."""
    return sum(1 for H in specs if representation_length(H, F) == 1)


def single_coefficient_count(specs: Iterable[Hyperplane]) -> int:
    """Hyperplanes with exactly one real coefficient (these always have length 1)."""
    return sum(1 for H in specs if sum(a is not BOTTOM for a in H.coefficients) == 1)


def incomplete_count(specs: Iterable[Hyperplane]) -> int:
    """Hyperplanes with at least one 0_T coefficient."""
    return sum(1 for H in specs if not H.is_complete)
