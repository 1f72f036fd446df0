"""Hyperplanes in general position can still collapse on a curve.

For the curve (0, x, 2x) a hyperplane such as max(1 + x0, 1 + x1) reduces to
a single term on part of the line, and hyperplanes with one real coefficient
always do.  The counts below measure how far the optimal coefficient q - n - 1
is from being attained, and the coordinate-plus-complete construction shows
the equality case.

    python demos/degenerate_families.py
"""

from tropnev import curves, harness as hz, plfun
from tropnev.core import BOTTOM, format_scalar
from tropnev.curves import Curve, Hyperplane
from tropnev.linalg import general_position
from tropnev.suites import coordinate_complete_scenario

INF = BOTTOM


def main():
    F = Curve((plfun.constant(0), plfun.IDENTITY, plfun.scale(plfun.IDENTITY, 2)))
    family = [Hyperplane(a) for a in ((1, INF, INF), (INF, 1, 1), (INF, INF, 1), (1, 1, INF))]
    print("general position:", general_position(family, 2))
    for H in family:
        coeffs = ", ".join(format_scalar(a) for a in H.coefficients)
        print(f"  ({coeffs}): representation length {curves.representation_length(H, F)}")
    v = hz.cc410_report(hz.Scenario(F, tuple(family)))
    print("two-sided bound:", v.verdict, "lambda* =", v.details["lambda_star"],
          "lambda =", v.details["lambda"])

    for n in (1, 2, 3):
        v = hz.cc410_report(coordinate_complete_scenario(n))
        eq = v.details["equality"]
        print(f"n = {n}: lambda* = {v.details['lambda_star']}, lambda = {v.details['lambda']}, "
              f"equality {eq.verdict}")


if __name__ == "__main__":
    main()
