"""Randomized property suites.

Each suite draws its own generator from ``(seed, suite name)``, so results do
not depend on which other suites ran first.  ``FULL`` holds the acceptance
sizes, which ``reproduce-paper`` also uses.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import generators as gen
from . import harness as hz
from . import nevanlinna as nev
from . import plfun
from .casorati import CasoratiSpec, casorati_properties_check
from .core import BOTTOM
from .curves import Curve, Hyperplane, coordinate_hyperplane
from .linalg import general_position, tropical_determinant, value_vector

FULL = {"jensen": 200, "fmt": 50, "smt_main": 50, "complete_hyperplane": 30,
        "casorati_properties": 50, "determinant": 500, "tp1_general_position": 100}


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.trials > 0

    @property
    def observed(self) -> str:
        return f"{self.trials - len(self.failures)}/{self.trials}"


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _positive(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 48), rng.choice((1, 2, 4)))


def jensen_suite(count: int, seed: int, radii: int = 5) -> SuiteResult:
    """Jensen defect is exactly 0 for random polynomials and combinations."""
    rng = _rng(seed, "jensen")
    out = SuiteResult("jensen", count)
    for i in range(count):
        f = gen.polynomial(rng) if i % 2 == 0 else gen.combination(rng)
        for _ in range(radii):
            r = _positive(rng)
            d = nev.jensen_defect(f, r)
            if d != 0:
                out.failures.append((i, r, d))
    return out


def _random_n(rng):
    return rng.randint(1, 3)


def fmt_suite(count: int, seed: int) -> SuiteResult:
    """``m_f + N - T_f`` is the same at all 64 default grid points and equals the formula."""
    rng = _rng(seed, "fmt")
    out = SuiteResult("fmt", count)
    for i in range(count):
        n = _random_n(rng)
        F = gen.curve(rng, n)
        H = Hyperplane(gen.coefficient_vector(rng, n))
        try:
            res = hz.fmt_report(hz.Scenario(F, (H,)))[0]
        except Exception as exc:  # any error is a failure of the identity
            out.failures.append((i, type(exc).__name__))
            continue
        if res.constant != hz.fmt_expected_constant(F, H):
            out.failures.append((i, res.constant))
    return out


def smt_main_suite(count: int, seed: int) -> SuiteResult:
    """Main second main theorem on random general-position families, n <= 3, q <= 6."""
    rng = _rng(seed, "smt_main")
    out = SuiteResult("smt_main", count)
    for i in range(count):
        n = _random_n(rng)
        q = rng.randint(n + 1, 6)
        sc = hz.Scenario(gen.curve(rng, n), tuple(gen.general_position_family(rng, n, q)))
        v = hz.smt_main_report(sc)
        if v.verdict != hz.HOLDS:
            out.failures.append((i, v.verdict))
    return out


def complete_hyperplane_suite(count: int, seed: int) -> SuiteResult:
    """Tail slope of ``T_f - N(1/(P o f))`` is exactly 0 for complete hyperplanes."""
    rng = _rng(seed, "complete_hyperplane")
    out = SuiteResult("complete_hyperplane", count)
    for i in range(count):
        n = _random_n(rng)
        sc = hz.Scenario(gen.curve(rng, n), (gen.complete_hyperplane(rng, n),))
        v = hz.complete_hyperplane_identity(sc)
        slope = hz.tail_slope(v.details["deficit_profile"])
        if slope != 0:
            out.failures.append((i, slope))
    return out


def casorati_properties_suite(count: int, seed: int) -> SuiteResult:
    """Symmetry, bottom absorption and multiplicativity exactly; domination pointwise."""
    rng = _rng(seed, "casorati_properties")
    out = SuiteResult("casorati_properties", count)
    for i in range(count):
        fns = [gen.combination(rng, 1) for _ in range(rng.randint(1, 4))]
        c = rng.choice((Fraction(1), Fraction(1, 2), Fraction(-1), Fraction(2)))
        rep = casorati_properties_check(CasoratiSpec(fns, c), gen.entire(rng))
        if not rep.passed or rep.multiplicative is not True:
            out.failures.append((i, rep))
    return out


def brute_force_determinant(rows) -> tuple:
    """``(value, multiplicity)`` by enumerating every permutation."""
    n = len(rows)
    best, count = BOTTOM, 0
    for perm in itertools.permutations(range(n)):
        entries = [rows[i][perm[i]] for i in range(n)]
        if any(a is BOTTOM for a in entries):
            continue
        s = sum(entries)
        if best is BOTTOM or s > best:
            best, count = s, 1
        elif s == best:
            count += 1
    return best, count


def determinant_suite(count: int, seed: int) -> SuiteResult:
    """Determinant and optimal-permutation count agree with enumeration."""
    rng = _rng(seed, "determinant")
    out = SuiteResult("determinant", count)
    for i in range(count):
        side = rng.randint(1, 5)
        rows = gen.matrix(rng, side, rng.uniform(0.0, 0.5))
        cert = tropical_determinant(rows)
        if (cert.value, cert.multiplicity) != brute_force_determinant(rows):
            out.failures.append((i, rows))
    return out


def tp1_suite(count: int, seed: int) -> SuiteResult:
    """Distinct TP^1 values are exactly those in general position."""
    rng = _rng(seed, "tp1_general_position")
    out = SuiteResult("tp1_general_position", count)
    for i in range(count):
        values = gen.tp1_values(rng, rng.randint(2, 5))
        distinct = len(set(values)) == len(values)
        if distinct != general_position([value_vector(a) for a in values], 1):
            out.failures.append((i, values))
    return out


def coordinate_complete_scenario(n: int) -> hz.Scenario:
    """Curve ``(i x - i^2)_i`` with coordinate hyperplanes then complete ones."""
    F = Curve(tuple(plfun.affine(i, -i * i) for i in range(n + 1)))
    extras = [Hyperplane(tuple(Fraction(0) for _ in range(n + 1))),
              Hyperplane(tuple(Fraction(k * k) for k in range(n + 1)))]
    hs = [coordinate_hyperplane(i, n) for i in range(n + 1)] + extras
    return hz.Scenario(F, tuple(hs), name=f"coordinate_complete_n{n}")


def coordinate_complete_suite(dims=(1, 2, 3)) -> SuiteResult:
    out = SuiteResult("coordinate_complete_construction", len(dims))
    for n in dims:
        v = hz.cc410_report(coordinate_complete_scenario(n))
        eq = v.details["equality"]
        ok = (v.details["lambda_star"] == n + 1 and v.details["lambda"] == 0 and eq is not None
              and hz.tail_slope(eq.details["deficit_profile"]) == 0 and v.holds)
        if not ok:
            out.failures.append((n, v.verdict))
    return out


SUITES = {
    "jensen": jensen_suite,
    "fmt": fmt_suite,
    "smt_main": smt_main_suite,
    "complete_hyperplane": complete_hyperplane_suite,
    "casorati_properties": casorati_properties_suite,
    "determinant": determinant_suite,
    "tp1_general_position": tp1_suite,
}


def run_suites(sizes=None, seed: int | None = None) -> list:
    sizes = FULL if sizes is None else sizes
    seed = gen.seed_from_env() if seed is None else seed
    results = [SUITES[name](count, seed) for name, count in sizes.items()]
    results.append(coordinate_complete_suite())
    return results
