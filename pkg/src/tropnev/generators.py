"""Seeded random instances for the property suites.

The seed comes from the ``TROPNEV_SEED`` environment variable when set, so a
failing run can be replayed; otherwise a fixed default keeps runs identical.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from . import plfun
from .core import BOTTOM
from .curves import Curve, Hyperplane, reduced_check, tail_certificate
from .linalg import general_position

DEFAULT_SEED = 20240611


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get("TROPNEV_SEED")
    return int(raw) if raw not in (None, "") else default


def make_rng(seed: int | None = None) -> random.Random:
    return random.Random(seed_from_env() if seed is None else seed)


def rational(rng: random.Random, lo: int = -5, hi: int = 5, dens=(1, 1, 2, 3, 4)) -> Fraction:
    d = rng.choice(dens)
    return Fraction(rng.randint(lo * d, hi * d), d)


def polynomial(rng: random.Random, terms: int | None = None, slope_range: int = 4) -> plfun.PLFunction:
    """Random max-plus polynomial ``max_j (a_j + n_j x)`` with rational data."""
    k = terms if terms is not None else rng.randint(1, 4)
    slopes = rng.sample(range(-slope_range, slope_range + 1), k)
    return plfun.from_tropical_polynomial([(rational(rng), s) for s in slopes])


def meromorphic(rng: random.Random, pieces: int | None = None) -> plfun.PLFunction:
    """Random continuous PL function with roots and poles."""
    k = pieces if pieces is not None else rng.randint(1, 5)
    bps = sorted({rational(rng, -6, 6) for _ in range(k)})
    slopes = [rational(rng, -4, 4, (1, 2)) for _ in range(len(bps) + 1)]
    return plfun.PLFunction.from_pieces((Fraction(0), rational(rng)), bps, slopes)


def combination(rng: random.Random, depth: int = 2) -> plfun.PLFunction:
    """Random expression tree over max, + and - of polynomials."""
    if depth == 0 or rng.random() < 0.3:
        return polynomial(rng) if rng.random() < 0.7 else meromorphic(rng)
    f, g = combination(rng, depth - 1), combination(rng, depth - 1)
    op = rng.choice((plfun.max_combine, plfun.add_combine, plfun.sub_combine, plfun.min_combine))
    return op(f, g)


def entire(rng: random.Random) -> plfun.PLFunction:
    return polynomial(rng)


def curve(rng: random.Random, n: int, attempts: int = 200) -> Curve:
    """Polynomial curve in TP^n certified nondegenerate by distinct top slopes
    and reduced (no common root)."""
    for _ in range(attempts):
        tops = rng.sample(range(-3, 5), n + 1)
        comps = []
        for top in tops:
            below = [s for s in range(-4, 5) if s < top]
            lower = rng.sample(below, min(rng.randint(0, 2), len(below)))
            terms = [(rational(rng), top)] + [(rational(rng), s) for s in lower]
            comps.append(plfun.from_tropical_polynomial(terms))
        if not reduced_check(comps):
            continue
        F = Curve(tuple(comps))
        if tail_certificate(F):
            return F
    raise RuntimeError("could not draw a certified curve")


def coefficient_vector(rng: random.Random, n: int, bottom_rate: float = 0.25) -> tuple:
    while True:
        v = tuple(BOTTOM if rng.random() < bottom_rate else rational(rng, -3, 3) for _ in range(n + 1))
        if any(a is not BOTTOM for a in v):
            return v


def general_position_family(rng: random.Random, n: int, q: int, bottom_rate: float = 0.2,
                            attempts: int = 500) -> list:
    for _ in range(attempts):
        hs = [Hyperplane(coefficient_vector(rng, n, bottom_rate)) for _ in range(q)]
        if general_position(hs, n):
            return hs
    raise RuntimeError("could not draw a family in general position")


def complete_hyperplane(rng: random.Random, n: int) -> Hyperplane:
    return Hyperplane(tuple(rational(rng, -3, 3) for _ in range(n + 1)))


def matrix(rng: random.Random, side: int, bottom_density: float = 0.0, lo: int = -3, hi: int = 3) -> list:
    """Small-integer entries so that ties (singular matrices) actually occur."""
    return [[BOTTOM if rng.random() < bottom_density else Fraction(rng.randint(lo, hi))
             for _ in range(side)] for _ in range(side)]


def tp1_values(rng: random.Random, q: int) -> list:
    """Values of TP^1 in R u {-inf}, drawn from a small pool so repeats happen."""
    pool = [BOTTOM] + [Fraction(k, 2) for k in range(-4, 5)]
    return [rng.choice(pool) for _ in range(q)]
