"""Machine-checkable versions of the main and second main theorems.

Every inequality of the form ``LHS(r) <= RHS(r) + O(1)`` is turned into the
deficit ``D(r) = RHS(r) - LHS(r)``, itself a piecewise-linear function of r.
On global data ``D`` is affine beyond its last breakpoint, so "bounded below"
is the exact statement "tail slope of D >= 0".  Windowed data have no tail;
there the verdict looks at the trend of D over the last half of the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import nevanlinna as nev
from . import plfun
from .casorati import CasoratiSpec, casorati
from .core import BOTTOM, scalar
from .curves import (
    Curve,
    Hyperplane,
    compose,
    ddg,
    ddg_star,
    incomplete_count,
    is_nondegenerate,
    single_coefficient_count,
)
from .errors import (
    DegenerateCurve,
    DuplicateValues,
    NoIndependentSubset,
    NonConstant,
    NotComplete,
    NotGeneralPosition,
    OutOfWindow,
    TooFew,
    WindowedCurve,
    ZeroCharacteristic,
)
from .linalg import general_position, value_vector, vectors_independent
from .plfun import PLFunction

HOLDS = "HoldsEventually"
FAILS = "FailsEventually"
INCONCLUSIVE = "WindowInconclusive"

DEFAULT_GRID_POINTS = 64


# -- grids -------------------------------------------------------------------


def default_grid(fns: Sequence[PLFunction], radius=None, points: int = DEFAULT_GRID_POINTS) -> tuple:
    """Geometric grid from 1 to ``4 (max |breakpoint| + 1)``, capped at ``radius``.

    Points are rounded to three decimals so the grid is exact and short to
    print; the last point is the upper end itself.
    """
    bps = [abs(b) for f in fns if not f.is_bottom for b in f.breakpoints]
    upper = 4 * (max(bps, default=Fraction(0)) + 1)
    if radius is not None:
        upper = min(upper, Fraction(radius))
    lower = Fraction(1) if upper > 1 else upper / points
    out = set()
    ratio = float(upper / lower)
    for i in range(points - 1):
        v = float(lower) * ratio ** (i / (points - 1))
        q = Fraction(round(v * 1000), 1000)
        if 0 < q < upper:
            out.add(q)
    out.add(upper)
    return tuple(sorted(out))


def _check_grid(grid) -> tuple:
    grid = tuple(Fraction(r) for r in grid)
    if not grid:
        raise ValueError("the grid must be nonempty")
    if any(r <= 0 for r in grid) or any(a >= b for a, b in zip(grid, grid[1:])):
        raise ValueError("the grid must be strictly increasing and positive")
    return grid


def _fit_grid(grid, fns, radius):
    """Explicit grids are clipped to the profile radius; returns (grid, clipped)."""
    if grid is None:
        return default_grid(fns, radius), 0
    grid = _check_grid(grid)
    if radius is None:
        return grid, 0
    kept = tuple(r for r in grid if r <= radius)
    if not kept:
        raise OutOfWindow(f"no grid point lies inside the radius {radius}")
    return kept, len(grid) - len(kept)


# -- scenario and verdicts ---------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    curve: Curve
    hyperplanes: tuple
    grid: tuple | None = None
    c: Fraction = Fraction(1)
    truncate: bool = False
    assume_nondegenerate: bool = False
    window: tuple | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c == 0:
            raise ValueError("the shift c must be nonzero")
        if self.window is not None:
            lo, hi = Fraction(self.window[0]), Fraction(self.window[1])
            object.__setattr__(self, "window", (lo, hi))
            comps = [f if f.is_bottom else plfun.restrict(f, (lo, hi)) for f in self.curve.components]
            object.__setattr__(self, "curve", Curve(tuple(comps)))
        if self.grid is not None:
            object.__setattr__(self, "grid", _check_grid(self.grid))
        for H in self.hyperplanes:
            if H.dimension != self.curve.n:
                raise ValueError(f"hyperplane {H.coefficients} does not live in TP^{self.curve.n}")

    @property
    def q(self) -> int:
        return len(self.hyperplanes)

    @property
    def n(self) -> int:
        return self.curve.n


@dataclass(frozen=True)
class SlopeVerdict:
    lhs_tail_slope: Fraction
    rhs_tail_slope: Fraction
    difference_min_on_grid: Fraction
    verdict: str
    name: str = ""
    columns: tuple = ()
    rows: tuple = ()
    details: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


def tail_slope(p: PLFunction, radius=None) -> Fraction:
    """Right tail slope of a global profile, or the slope of its last piece."""
    if p.window is None:
        return plfun.asymptotic_slopes(p)[1]
    return p.slope_left_of(p.window[1])


def trend_verdict(values: Sequence[Fraction]) -> str:
    """Verdict for windowed data from the last half of the grid samples."""
    tail = list(values[len(values) // 2:])
    if len(tail) < 2:
        return INCONCLUSIVE
    steps = [b - a for a, b in zip(tail, tail[1:])]
    if all(s < 0 for s in steps):
        return FAILS
    if all(s >= 0 for s in steps):
        return HOLDS
    return INCONCLUSIVE


def compare(name: str, lhs: PLFunction, rhs: PLFunction, grid, terms: dict | None = None,
            details: dict | None = None) -> SlopeVerdict:
    """Assemble a verdict for ``lhs <= rhs + O(1)`` from two r-profiles."""
    deficit = plfun.sub_combine(rhs, lhs)
    terms = dict(terms or {})
    columns = ("r", *terms.keys(), "lhs", "rhs", "deficit")
    rows = []
    for r in grid:
        row = [r] + [plfun.evaluate(p, r) for p in terms.values()]
        row += [plfun.evaluate(lhs, r), plfun.evaluate(rhs, r), plfun.evaluate(deficit, r)]
        rows.append(tuple(row))
    dmin = min(row[-1] for row in rows)
    if deficit.window is None:
        verdict = HOLDS if tail_slope(deficit) >= 0 else FAILS
    else:
        verdict = trend_verdict([row[-1] for row in rows])
    details = dict(details or {})
    details.setdefault("deficit_profile", deficit)
    return SlopeVerdict(tail_slope(lhs), tail_slope(rhs), dmin, verdict, name,
                        columns, tuple(rows), details)


def equality_verdict(name: str, lhs: PLFunction, rhs: PLFunction, grid, terms=None, details=None) -> SlopeVerdict:
    """``lhs = rhs + O(1)``: tail slope of the difference is exactly 0 (global),
    or the difference is constant over the last half of the grid (windowed)."""
    v = compare(name, lhs, rhs, grid, terms, details)
    deficit = v.details["deficit_profile"]
    if deficit.window is None:
        ok = tail_slope(deficit) == 0
    else:
        tail = [row[-1] for row in v.rows[len(v.rows) // 2:]]
        ok = len(set(tail)) == 1
    verdict = HOLDS if ok else (FAILS if deficit.window is None else INCONCLUSIVE)
    return SlopeVerdict(v.lhs_tail_slope, v.rhs_tail_slope, v.difference_min_on_grid, verdict,
                        name, v.columns, v.rows, v.details)


# -- shared building blocks -----------------------------------------------------


def _radius(fns) -> Fraction | None:
    return nev.profile_radius([f for f in fns if not f.is_bottom])


def _compositions(sc: Scenario) -> list:
    return [compose(H, sc.curve) for H in sc.hyperplanes]


def _require_general_position(sc: Scenario) -> None:
    try:
        ok = general_position(sc.hyperplanes, sc.n)
    except TooFew as exc:
        raise NotGeneralPosition(str(exc)) from None
    if not ok:
        raise NotGeneralPosition("some n+1 of the coefficient vectors are dependent")


def _require_nondegenerate(sc: Scenario) -> None:
    if sc.assume_nondegenerate:
        return
    if not is_nondegenerate(sc.curve):
        raise DegenerateCurve("the curve has a tropical linear dependence witness")


def _root_counting_sum(fns, R, truncated=False) -> PLFunction:
    return plfun.sum_all(nev.counting_profile(f, "roots", truncated, R) for f in fns)


# -- First Main Theorem --------------------------------------------------------


@dataclass(frozen=True)
class FMTResult:
    hyperplane: Hyperplane
    constant: Fraction
    columns: tuple
    rows: tuple


def fmt_report(sc: Scenario) -> list:
    """``m_f(r,H) + N(r, 1/(P o f)) - T_f(r)`` for each H, evaluated pointwise.

    The value must be identical at every grid point; any variation raises
    NonConstant.
    """
    F = sc.curve
    grid, _ = _fit_grid(sc.grid, F.components, F.radius())
    out = []
    for H in sc.hyperplanes:
        g = compose(H, F)
        rows = []
        for r in grid:
            m = nev.curve_proximity(F, H, r)
            N = nev.counting_roots(g, r)
            T = nev.cartan_characteristic(F, r)
            rows.append((r, m, N, T, m + N - T))
        constants = {row[-1] for row in rows}
        if len(constants) != 1:
            raise NonConstant(f"First Main Theorem quantity varies for {H.coefficients}: {sorted(constants)}")
        out.append(FMTResult(H, rows[0][-1], ("r", "m_f", "N", "T_f", "constant"), tuple(rows)))
    return out


def fmt_expected_constant(F: Curve, H: Hyperplane) -> Fraction:
    """``||a|| - (P o f)(0) + ||f(0)||``."""
    return H.norm - plfun.evaluate(compose(H, F), 0) + F.norm_at(0)


# -- second main theorems ----------------------------------------------------------


def smt_main_report(sc: Scenario) -> SlopeVerdict:
    """``(q-n-1) T_f <= sum_j N(1/(P_j o f)) - sum_i N(1/f_i) + O(1)``."""
    _require_general_position(sc)
    _require_nondegenerate(sc)
    F = sc.curve
    comps = _compositions(sc)
    R = _radius(F.components)
    grid, clipped = _fit_grid(sc.grid, F.components + tuple(comps), R)
    T = nev.cartan_profile(F, R)
    NP = _root_counting_sum(comps, R)
    Nf = _root_counting_sum(F.components, R)
    lhs = plfun.scale(T, sc.q - sc.n - 1)
    rhs = plfun.sub_combine(NP, Nf)
    return compare("smt_main", lhs, rhs, grid,
                   {"T_f": T, "sum_N_P": NP, "sum_N_f": Nf},
                   {"q": sc.q, "n": sc.n, "clipped_grid_points": clipped})


def casorati_of_curve(sc: Scenario) -> PLFunction:
    return casorati(CasoratiSpec(sc.curve.components, sc.c))


def smt_casorati_report(sc: Scenario) -> SlopeVerdict:
    """``(q-n-1) T_f <= sum_j N(1/(P_j o f)) - N(1/C(f)) + o(T_f)``.

    On windowed curves only the grid trend is reported: the o(T_f) term needs
    subnormal growth, which a window cannot certify.
    """
    _require_general_position(sc)
    _require_nondegenerate(sc)
    F = sc.curve
    C = casorati_of_curve(sc)
    comps = _compositions(sc)
    R = _radius(list(F.components) + [C])
    grid, clipped = _fit_grid(sc.grid, F.components + tuple(comps), R)
    T = nev.cartan_profile(F, R)
    NP = _root_counting_sum(comps, R)
    NC = nev.counting_profile(C, "roots", R=R)
    lhs = plfun.scale(T, sc.q - sc.n - 1)
    rhs = plfun.sub_combine(NP, NC)
    return compare("smt_casorati", lhs, rhs, grid,
                   {"T_f": T, "sum_N_P": NP, "N_C": NC},
                   {"q": sc.q, "n": sc.n, "casorati": C, "clipped_grid_points": clipped})


def casorati_counting_check(sc: Scenario) -> SlopeVerdict:
    """``N(1/C(f)) <= sum_i N(1/f_i) + o(T_f)`` on polynomial curves."""
    if not sc.curve.is_global:
        raise WindowedCurve("the Casorati counting bound is only checked on global curves")
    F = sc.curve
    C = casorati_of_curve(sc)
    grid, _ = _fit_grid(sc.grid, list(F.components) + [C], None)
    lhs = nev.counting_profile(C, "roots")
    rhs = _root_counting_sum(F.components, None)
    return compare("casorati_counting", lhs, rhs, grid, details={"casorati": C})


# -- product to sum estimate -----------------------------------------------------


def _best_subset_sum(profiles: Sequence[PLFunction], size: int) -> PLFunction:
    return plfun.max_all(plfun.sum_all(S) for S in combinations(profiles, size))


def product_to_sum_report(sc: Scenario) -> SlopeVerdict:
    """``sum_j m_f(r,H_j) <= sum_sigma max_mu 1/2 sum_i lambda_{mu(i)}(f(sigma r)) + O(1)``."""
    F = sc.curve
    R = _radius(F.components)
    grid, _ = _fit_grid(sc.grid, F.components, R)
    lhs = plfun.sum_all(nev.curve_proximity_profile(F, H, R) for H in sc.hyperplanes)
    if sc.q <= sc.n + 1:
        rhs = lhs
    else:
        _require_general_position(sc)
        plus, minus = zip(*(nev.weil_profiles(F, H, R) for H in sc.hyperplanes))
        size = sc.n + 1
        rhs = plfun.scale(plfun.add_combine(_best_subset_sum(plus, size), _best_subset_sum(minus, size)),
                          Fraction(1, 2))
    v = compare("product_to_sum", lhs, rhs, grid)
    details = dict(v.details)
    details["constant"] = max(Fraction(0), -v.difference_min_on_grid)
    return SlopeVerdict(v.lhs_tail_slope, v.rhs_tail_slope, v.difference_min_on_grid, v.verdict,
                        v.name, v.columns, v.rows, details)


def product_to_sum_check(sc: Scenario) -> bool:
    """Whether one constant makes the estimate hold for all r (trivially true
    when q <= n+1)."""
    if sc.q <= sc.n + 1:
        return True
    return product_to_sum_report(sc).holds


# -- complete hyperplanes and defects --------------------------------------------


def complete_hyperplane_identity(sc: Scenario, index: int = 0) -> SlopeVerdict:
    """``T_f(r) = N(r, 1/(P o f)) + O(1)`` for a hyperplane with real coefficients."""
    H = sc.hyperplanes[index]
    if not H.is_complete:
        raise NotComplete(f"hyperplane {H.coefficients} has a 0_T coefficient")
    _require_nondegenerate(sc)
    F = sc.curve
    g = compose(H, F)
    R = _radius(F.components)
    grid, _ = _fit_grid(sc.grid, list(F.components) + [g], R)
    T = nev.cartan_profile(F, R)
    N = nev.counting_profile(g, "roots", R=R)
    return equality_verdict("complete_hyperplane", T, N, grid, {"T_f": T, "N_P": N})


def defect_relation_report(sc: Scenario) -> dict:
    """Defect estimates of each hyperplane and whether their sum is at most n+1."""
    F = sc.curve
    grid, _ = _fit_grid(sc.grid, F.components, F.radius())
    defects = [nev.defect_estimate(F, H, grid) for H in sc.hyperplanes]
    return {"defects": defects, "sum": sum(defects), "bound": sc.n + 1,
            "holds": sum(defects) <= sc.n + 1}


# -- one-variable second main theorem ----------------------------------------------


def _check_values(values) -> list:
    values = [scalar(a) for a in values]
    if not values:
        raise ValueError("need at least one value")
    if len(values) >= 2 and not general_position([value_vector(a) for a in values], 1):
        raise DuplicateValues(f"values are not pairwise distinct: {values}")
    return values


def _join(f: PLFunction, a) -> PLFunction:
    """``f (+) a``; joining with 0_T leaves f unchanged."""
    if a is BOTTOM:
        return f
    return plfun.max_combine(f, plfun.constant(a))


def _value_grid(f, joins, grid):
    R = _radius([f])
    return _fit_grid(grid, [f, *joins], R)[0], R


def meromorphic_smt_report(f: PLFunction, values, grid=None) -> SlopeVerdict:
    """``(q-2)T(f) + N(f) + N(1/f) <= sum_j (N(1/(f+a_j)) + N(f) - N(f+a_j)) + O(1)``.

    Here ``f + a`` means the tropical sum ``max(f, a)``.  When every value lies
    below ``f`` at all poles the simplified right-hand side ``sum_j N(1/(f+a_j))``
    is evaluated as well and stored under ``details["simplified"]``.
    """
    values = _check_values(values)
    if f.is_bottom or not f.breakpoints and f.slopes[0] == 0:
        raise ValueError("f must be nonconstant")
    q = len(values)
    joins = [_join(f, a) for a in values]
    grid, R = _value_grid(f, joins, grid)
    T = nev.characteristic_profile(f, R)
    Nf = nev.counting_profile(f, "poles", R=R)
    Nz = nev.counting_profile(f, "roots", R=R)
    lhs = plfun.sum_all([plfun.scale(T, q - 2), Nf, Nz])
    Nzj = [nev.counting_profile(g, "roots", R=R) for g in joins]
    Npj = [nev.counting_profile(g, "poles", R=R) for g in joins]
    rhs = plfun.sum_all(plfun.sub_combine(plfun.add_combine(a, Nf), b) for a, b in zip(Nzj, Npj))
    details = {"q": q, "T": T}
    pole_values = [f._eval(c.location) for c in plfun.poles(f)]
    real_values = [a for a in values if a is not BOTTOM]
    hypothesis = not real_values or not pole_values or max(real_values) < min(pole_values)
    details["simplified_hypothesis"] = hypothesis
    if hypothesis:
        details["simplified"] = compare("meromorphic_smt_simplified", lhs, plfun.sum_all(Nzj), grid)
    return compare("meromorphic_smt", lhs, rhs, grid, {"T": T, "N_f": Nf, "N_1/f": Nz}, details)


def truncated_counterexample(f: PLFunction, values, grid=None, truncated: bool = True) -> SlopeVerdict:
    """The classical truncated form ``(q-1)T(f) <= sum_j N1(1/(f+a_j)) + N1(f) + O(1)``.

    With ``truncated=False`` the same inequality is checked with full
    multiplicities.
    """
    values = _check_values(values)
    q = len(values)
    joins = [_join(f, a) for a in values]
    grid, R = _value_grid(f, joins, grid)
    T = nev.characteristic_profile(f, R)
    Nf = nev.counting_profile(f, "poles", truncated, R)
    Nzj = [nev.counting_profile(g, "roots", truncated, R) for g in joins]
    lhs = plfun.scale(T, q - 1)
    rhs = plfun.sum_all([*Nzj, Nf])
    terms = {"T": T, "N_f": Nf}
    for i, p in enumerate(Nzj, 1):
        terms[f"N_a{i}"] = p
    name = "truncated_smt" if truncated else "untruncated_smt"
    return compare(name, lhs, rhs, grid, terms,
                   {"truncated": truncated, "value_counting_profiles": Nzj, "T": T, "N_f": Nf})


# -- growth indicator ------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthReport:
    samples: tuple
    classification: str
    threshold: float

    @property
    def final(self) -> float:
        return self.samples[-1][1]


def growth_indicator(F: Curve, grid=None, threshold: float = 0.1) -> GrowthReport:
    """Samples of ``log T_f(r) / r``.

    Global curves are always Subnormal: T_f is eventually affine, so the
    indicator tends to 0.  On a window, NotSubnormal is flagged when the
    indicator rises over the last half of the grid and ends above ``threshold``.
    """
    grid, _ = _fit_grid(grid, F.components, F.radius())
    tail_start = (3 * len(grid)) // 4
    samples = []
    for i, r in enumerate(grid):
        T = nev.cartan_characteristic(F, r)
        if T <= 0:
            if i >= tail_start:
                raise ZeroCharacteristic(f"T_f({r}) = {T} is not positive")
            continue
        samples.append((r, math.log(T) / float(r)))
    if not samples:
        raise ZeroCharacteristic("T_f is never positive on the grid")
    half = samples[len(samples) // 2:]
    rising = half[-1][1] > half[0][1]
    if F.is_global:
        label = "Subnormal"
    else:
        label = "NotSubnormal" if rising and half[-1][1] > threshold else "Subnormal"
    return GrowthReport(tuple(samples), label, threshold)


# -- degeneracy ------------------------------------------------------------------------


def cc410_report(sc: Scenario) -> SlopeVerdict:
    """Two-sided bound ``(q-n-1)T <= middle <= (q-lambda*)T`` and its equality case.

    ``lambda*`` counts hyperplanes with exactly one real coefficient.  Counting
    every composition of length 1 instead would break the upper bound: two
    hyperplanes with several real coefficients can collapse onto the same
    component, whose counting function is cancelled only once.  The length
    based counts are kept in the details for comparison.

    When the first n+1 hyperplanes all have one real coefficient, the trailing
    ones must be complete (all coefficients real) and
    ``(q-n-1)T = sum_{j>n+1} N(1/(P_j o f)) + O(1)``.
    """
    _require_general_position(sc)
    _require_nondegenerate(sc)
    F, n, q = sc.curve, sc.n, sc.q
    head, trailing = sc.hyperplanes[: n + 1], sc.hyperplanes[n + 1:]
    comps = _compositions(sc)
    lam_star = single_coefficient_count(sc.hyperplanes)
    lam_star_head = single_coefficient_count(head)
    lam_incomplete = incomplete_count(trailing)
    R = _radius(F.components)
    grid, _ = _fit_grid(sc.grid, F.components + tuple(comps), R)
    T = nev.cartan_profile(F, R)
    middle = plfun.sub_combine(_root_counting_sum(comps, R), _root_counting_sum(F.components, R))
    lower = compare("cc410_lower", plfun.scale(T, q - n - 1), middle, grid)
    upper = compare("cc410_upper", middle, plfun.scale(T, q - lam_star), grid)
    details = {"lambda_star": lam_star, "lambda_star_head": lam_star_head, "lambda": lam_incomplete,
               "ddg_star_length": ddg_star(sc.hyperplanes, F), "ddg_length": ddg(trailing, F),
               "lower": lower, "upper": upper, "equality": None,
               "deficit_profile": lower.details["deficit_profile"]}
    ok = lower.holds and upper.holds
    if lam_star_head == n + 1:
        eq = equality_verdict("cc410_equality", plfun.scale(T, q - n - 1),
                              _root_counting_sum(comps[n + 1:], R), grid)
        details["equality"] = eq
        ok = ok and eq.holds and lam_incomplete == 0
    parts = [lower, upper] + ([details["equality"]] if details["equality"] else [])
    if ok:
        verdict = HOLDS
    elif any(v.verdict == INCONCLUSIVE for v in parts):
        verdict = INCONCLUSIVE
    else:
        verdict = FAILS
    return SlopeVerdict(lower.lhs_tail_slope, lower.rhs_tail_slope, lower.difference_min_on_grid,
                        verdict, "cc410", lower.columns, lower.rows, details)


def general_smt_report(sc: Scenario) -> SlopeVerdict:
    """``sum_sigma max_K 1/2 sum_{k in K} lambda_k(f(sigma r)) <= (n+1)T_f - N(1/C(f)) + o(T_f)``.

    K ranges over the (n+1)-subsets with independent coefficient vectors; the
    maximum is taken separately at +r and at -r.
    """
    F, n = sc.curve, sc.n
    subsets = [K for K in combinations(range(sc.q), n + 1)
               if vectors_independent([sc.hyperplanes[k].coefficients for k in K])]
    if not subsets:
        raise NoIndependentSubset("no n+1 hyperplanes have independent coefficient vectors")
    _require_nondegenerate(sc)
    C = casorati_of_curve(sc)
    R = _radius(list(F.components) + [C])
    grid, _ = _fit_grid(sc.grid, F.components, R)
    weil = [nev.weil_profiles(F, H, R) for H in sc.hyperplanes]
    best = []
    for side in (0, 1):
        best.append(plfun.max_all(plfun.sum_all(weil[k][side] for k in K) for K in subsets))
    lhs = plfun.scale(plfun.add_combine(best[0], best[1]), Fraction(1, 2))
    T = nev.cartan_profile(F, R)
    NC = nev.counting_profile(C, "roots", R=R)
    rhs = plfun.sub_combine(plfun.scale(T, n + 1), NC)
    return compare("general_smt", lhs, rhs, grid, {"T_f": T, "N_C": NC},
                   {"independent_subsets": subsets})
