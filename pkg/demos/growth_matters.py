"""Why the Casorati form of the second main theorem needs slow growth.

The curve (0, e2) on [-8, 8] doubles under the shift x -> x + 1, so its
Casorati determinant is 2 e2 and the counting terms on the right cancel
exactly.  The characteristic on the left keeps growing, so the inequality
cannot hold with any constant; the main form, which counts roots of the
components instead, is unaffected.

    python demos/growth_matters.py
"""

from fractions import Fraction as F

from tropnev import harness as hz
from tropnev import plfun
from tropnev.curves import Curve, Hyperplane
from tropnev.core import BOTTOM

WINDOW = (F(-8), F(8))


def main():
    e = plfun.e2_function(WINDOW)
    F_ = Curve((plfun.restrict(plfun.constant(0), WINDOW), e))
    hs = (Hyperplane((0, BOTTOM)), Hyperplane((BOTTOM, 0)), Hyperplane((0, 0)))
    sc = hz.Scenario(F_, hs, grid=(1, 2, 3, 4, 5, 6, 7), window=WINDOW)

    cas = hz.smt_casorati_report(sc)
    print("Casorati form:", cas.verdict)
    for row in cas.rows:
        r, T, lhs, rhs = row[0], row[1], row[cas.columns.index("lhs")], row[cas.columns.index("rhs")]
        print(f"  r = {r}: T_f = {T}  lhs = {lhs}  rhs = {rhs}")
    print("main form:", hz.smt_main_report(sc).verdict)
    g = hz.growth_indicator(F_)
    print(f"growth indicator ends at {g.final:.3f}: {g.classification}")


if __name__ == "__main__":
    main()
