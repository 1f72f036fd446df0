"""The max-plus semiring over exact rationals.

A tropical scalar is either a :class:`fractions.Fraction` or the singleton
:data:`BOTTOM` (the additive identity ``0_T = -inf``).  ``BOTTOM`` compares
below every rational, so the builtin ``max`` is tropical addition.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import DivisionByBottom, UndefinedPower


class _Bottom:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"

    def __str__(self) -> str:
        return "-inf"

    def __reduce__(self):
        return (_Bottom, ())

    def __hash__(self) -> int:
        return hash("tropnev.BOTTOM")

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return other is not self

    def __le__(self, other) -> bool:
        return True

    def __gt__(self, other) -> bool:
        return False

    def __ge__(self, other) -> bool:
        return other is self


BOTTOM = _Bottom()
ZERO = Fraction(0)  # 1_T, the multiplicative identity

TropScalar = Union[Fraction, _Bottom]


def is_bottom(a) -> bool:
    return a is BOTTOM


def scalar(x) -> TropScalar:
    """Coerce ints, Fractions, rational strings and ``-inf`` to a TropScalar.

    Strings accept ``"p/q"``, decimals such as ``"-0.25"`` (converted exactly)
    and ``"-inf"``.  Floats are rejected except ``-inf`` since a binary float
    is almost never the rational the caller meant.
    """
    if x is BOTTOM:
        return BOTTOM
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not tropical scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if s.lower() in ("-inf", "-infinity", "0_t", "bottom"):
            return BOTTOM
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational literal: {x!r}") from None
    if isinstance(x, float):
        if x == -math.inf:
            return BOTTOM
        raise TypeError(f"float {x!r} is not exact; pass a string or Fraction")
    raise TypeError(f"cannot interpret {x!r} as a tropical scalar")


def tadd(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical sum, ``max(a, b)``."""
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return a if a >= b else b


def tsum(values) -> TropScalar:
    out = BOTTOM
    for v in values:
        out = tadd(out, v)
    return out


def tmul(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical product, ``a + b`` with BOTTOM absorbing."""
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return a + b


def tprod(values) -> TropScalar:
    out: TropScalar = ZERO
    for v in values:
        out = tmul(out, v)
    return out


def tdiv(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical quotient ``a - b``; dividing by BOTTOM is undefined."""
    if b is BOTTOM:
        raise DivisionByBottom("tropical division by 0_T")
    if a is BOTTOM:
        return BOTTOM
    return a - b


def tpow(a: TropScalar, alpha) -> TropScalar:
    """Tropical power ``alpha * a`` for rational ``alpha``."""
    if isinstance(alpha, float):
        raise TypeError(f"exponent {alpha!r} is not exact; pass a string or Fraction")
    alpha = Fraction(alpha)
    if a is BOTTOM:
        if alpha > 0:
            return BOTTOM
        raise UndefinedPower(f"0_T raised to {alpha} is undefined")
    return alpha * a


def format_scalar(a: TropScalar) -> str:
    if a is BOTTOM:
        return "-inf"
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"
