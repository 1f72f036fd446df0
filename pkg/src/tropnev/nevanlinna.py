"""Nevanlinna functionals of piecewise-linear functions and curves.

Two routes are provided.  The pointwise functions (``proximity``,
``counting_poles``, ``cartan_characteristic`` ...) evaluate a functional at
one radius.  The ``*_profile`` functions return the same functional as a
piecewise-linear function of ``r`` (meaningful for ``r >= 0``), which is what
the theorem harness uses to read off exact tail slopes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import plfun
from .core import BOTTOM
from .curves import Curve, Hyperplane, compose
from .errors import DegenerateComposition, OutOfWindow, ZeroCharacteristic
from .plfun import PLFunction

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class NevanlinnaSample:
    r: Fraction
    m: Fraction
    N: Fraction
    T: Fraction

    def __post_init__(self):
        if self.T != self.m + self.N:
            raise ValueError("T must equal m + N")


@dataclass(frozen=True)
class WeilSample:
    r: Fraction
    lambda_plus: Fraction
    lambda_minus: Fraction
    m_f: Fraction

    def __post_init__(self):
        if self.m_f != (self.lambda_plus + self.lambda_minus) / 2:
            raise ValueError("m_f must be the mean of the two Weil values")


def _radius(r) -> Fraction:
    r = Fraction(r)
    if r <= 0:
        raise ValueError(f"radius must be positive, got {r}")
    return r


def _require_disc(f: PLFunction, r: Fraction) -> None:
    if f.window is not None and not (f.window[0] <= -r and r <= f.window[1]):
        raise OutOfWindow(f"[-{r}, {r}] is not inside the window [{f.window[0]}, {f.window[1]}]")


# -- pointwise functionals ---------------------------------------------------


def proximity(f: PLFunction, r) -> Fraction:
    """``m(r, f) = (f^+(r) + f^+(-r)) / 2``."""
    r = _radius(r)
    if f.is_bottom:
        return Fraction(0)
    _require_disc(f, r)
    return (max(f._eval(r), Fraction(0)) + max(f._eval(-r), Fraction(0))) / 2


def _count(crossings, r: Fraction, truncated: bool) -> Fraction:
    total = Fraction(0)
    for c in crossings:
        d = abs(c.location)
        if d < r:
            total += (1 if truncated else c.multiplicity) * (r - d)
    return total / 2


def counting_poles(f: PLFunction, r) -> Fraction:
    """``N(r, f) = 1/2 sum_{|b| < r} |omega_f(b)| (r - |b|)`` over poles."""
    r = _radius(r)
    _require_disc(f, r)
    return _count(plfun.poles(f), r, False)


def counting_roots(f: PLFunction, r) -> Fraction:
    """``N(r, 1_T / f)``: the pole counting function of ``-f``."""
    r = _radius(r)
    _require_disc(f, r)
    return _count(plfun.roots(f), r, False)


def counting_truncated(f: PLFunction, r, kind: str = "poles") -> Fraction:
    """Counting function with every crossing weighted 1."""
    r = _radius(r)
    _require_disc(f, r)
    if kind == "poles":
        return _count(plfun.poles(f), r, True)
    if kind == "roots":
        return _count(plfun.roots(f), r, True)
    raise ValueError(f"kind must be 'poles' or 'roots', not {kind!r}")


def characteristic(f: PLFunction, r) -> NevanlinnaSample:
    m = proximity(f, r)
    N = counting_poles(f, r)
    return NevanlinnaSample(Fraction(r), m, N, m + N)


def jensen_defect(f: PLFunction, r) -> Fraction:
    """``N(r, 1/f) - N(r, f) - ((f(r) + f(-r))/2 - f(0))``; always 0."""
    r = _radius(r)
    lhs = counting_roots(f, r) - counting_poles(f, r)
    rhs = (f._eval(r) + f._eval(-r)) / 2 - f._eval(Fraction(0))
    return lhs - rhs


def cartan_characteristic(F: Curve, r) -> Fraction:
    """``T_f(r) = (||f(r)|| + ||f(-r)||)/2 - ||f(0)||``."""
    r = _radius(r)
    return (F.norm_at(r) + F.norm_at(-r)) / 2 - F.norm_at(0)


def weil_value(F: Curve, H: Hyperplane, x, composed: PLFunction | None = None) -> Fraction:
    """``lambda_H(f(x)) = ||f(x)|| + ||a|| - P(f(x))``."""
    g = composed if composed is not None else compose(H, F)
    if g.is_bottom:
        raise DegenerateComposition("P o f is identically 0_T")
    return F.norm_at(x) + H.norm - plfun.evaluate(g, x)


def weil_and_proximity(F: Curve, H: Hyperplane, r) -> WeilSample:
    r = _radius(r)
    g = compose(H, F)
    lp = weil_value(F, H, r, g)
    lm = weil_value(F, H, -r, g)
    return WeilSample(r, lp, lm, (lp + lm) / 2)


def curve_proximity(F: Curve, H: Hyperplane, r) -> Fraction:
    """``m_f(r, H)``."""
    return weil_and_proximity(F, H, r).m_f


def first_main_constant(F: Curve, H: Hyperplane, r) -> Fraction:
    """``m_f(r,H) + N(r, 1_T/(P o f)) - T_f(r)`` computed from its three terms."""
    g = compose(H, F)
    return curve_proximity(F, H, r) + counting_roots(g, r) - cartan_characteristic(F, r)


def defect_estimate(F: Curve, H: Hyperplane, grid: Sequence) -> Fraction:
    """Minimum of ``m_f(r,H) / T_f(r)`` over the last quartile of ``grid``.

    A finite-data stand-in for the liminf defining the defect.
    """
    grid = sorted(Fraction(r) for r in grid)
    if not grid:
        raise ValueError("empty grid")
    tail = grid[(3 * len(grid)) // 4:] or grid[-1:]
    ratios = []
    for r in tail:
        T = cartan_characteristic(F, r)
        if T <= 0:
            raise ZeroCharacteristic(f"T_f({r}) = {T} is not positive")
        ratios.append(curve_proximity(F, H, r) / T)
    return min(ratios)


# -- profiles: functionals as PL functions of r ---------------------------------


def profile_radius(fns) -> Fraction | None:
    """Largest radius on which every function is defined (None if unbounded)."""
    R = None
    for f in fns:
        rf = plfun.domain_radius(f)
        if rf is not None:
            R = rf if R is None else min(R, rf)
    if R is not None and R <= 0:
        raise OutOfWindow("the common window does not contain a neighbourhood of 0")
    return R


def _plus(g: PLFunction, R) -> PLFunction:
    """``r -> g(r)``."""
    return g if R is None or g.is_bottom else plfun.restrict(g, (0, R))


def _minus(g: PLFunction, R) -> PLFunction:
    """``r -> g(-r)``."""
    return _plus(plfun.reflect(g), R)


def _symmetric_mean(g: PLFunction, R) -> PLFunction:
    """``r -> (g(r) + g(-r)) / 2``."""
    return plfun.scale(plfun.add_combine(_plus(g, R), _minus(g, R)), HALF)


def _zero(R) -> PLFunction:
    z = plfun.constant(0)
    return z if R is None else plfun.restrict(z, (0, R))


def _ramp(b: Fraction, R) -> PLFunction:
    """``r -> max(0, r - b)``."""
    return _plus(plfun.from_tropical_polynomial([(0, 0), (-b, 1)]), R)


def counting_profile_from_crossings(crossings, R, truncated: bool = False) -> PLFunction:
    terms = []
    for c in crossings:
        d = abs(c.location)
        if R is not None and d >= R:
            continue
        w = Fraction(1) if truncated else c.multiplicity
        terms.append(plfun.scale(_ramp(d, R), w / 2))
    return plfun.sum_all(terms) if terms else _zero(R)


def counting_profile(f: PLFunction, kind: str = "poles", truncated: bool = False, R=None) -> PLFunction:
    """``r -> N(r, f)`` (kind="poles") or ``r -> N(r, 1_T/f)`` (kind="roots")."""
    if R is None:
        R = profile_radius([f])
    if f.is_bottom:
        return _zero(R)
    if kind == "poles":
        cs = plfun.poles(f)
    elif kind == "roots":
        cs = plfun.roots(f)
    else:
        raise ValueError(f"kind must be 'poles' or 'roots', not {kind!r}")
    return counting_profile_from_crossings(cs, R, truncated)


def proximity_profile(f: PLFunction, R=None) -> PLFunction:
    if R is None:
        R = profile_radius([f])
    if f.is_bottom:
        return _zero(R)
    return _symmetric_mean(plfun.positive_part(f), R)


def characteristic_profile(f: PLFunction, R=None) -> PLFunction:
    if R is None:
        R = profile_radius([f])
    return plfun.add_combine(proximity_profile(f, R), counting_profile(f, "poles", R=R))


def cartan_profile(F: Curve, R=None) -> PLFunction:
    if R is None:
        R = profile_radius(F.components)
    norm = F.norm_function()
    return plfun.add_constant(_symmetric_mean(norm, R), -norm._eval(Fraction(0)))


def weil_function(F: Curve, H: Hyperplane) -> PLFunction:
    """``x -> lambda_H(f(x))`` as a PL function of x."""
    g = compose(H, F)
    if g.is_bottom:
        raise DegenerateComposition("P o f is identically 0_T")
    return plfun.add_constant(plfun.sub_combine(F.norm_function(), g), H.norm)


def weil_profiles(F: Curve, H: Hyperplane, R=None) -> tuple:
    """``(r -> lambda_H(f(r)), r -> lambda_H(f(-r)))``."""
    if R is None:
        R = profile_radius(F.components)
    lam = weil_function(F, H)
    return _plus(lam, R), _minus(lam, R)


def curve_proximity_profile(F: Curve, H: Hyperplane, R=None) -> PLFunction:
    """``r -> m_f(r, H)``."""
    if R is None:
        R = profile_radius(F.components)
    return _symmetric_mean(weil_function(F, H), R)


def evaluate_profile(p: PLFunction, r) -> Fraction:
    value = plfun.evaluate(p, r)
    if value is BOTTOM:
        raise DegenerateComposition("profile is identically 0_T")
    return value
