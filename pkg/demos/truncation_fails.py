"""A tropical meromorphic function for which truncated multiplicities are too weak.

f = max(-3x, 0, 4x - 8) - max(-2x + 12, 3x - 18) has a single pole of order 5
at x = 6.  Counting that pole once instead of five times loses slope 2 in the
counting function, enough to make the truncated inequality fail, while the
same inequality with full multiplicities holds.

    python demos/truncation_fails.py
"""

from fractions import Fraction as F

from tropnev import harness as hz
from tropnev import nevanlinna as nev
from tropnev import plfun
from tropnev.expr import format_expression, parse_expression

f = parse_expression("max(-3*x, 0, 4*x - 8) - max(-2*x + 12, 3*x - 18)")
VALUES = (F(-12), F(-2))


def main():
    print("f =", format_expression(f))
    print("poles:", [(str(c.location), str(c.jump)) for c in plfun.poles(f)])
    for r in (F(8), F(13), F(20)):
        s = nev.characteristic(f, r)
        print(f"r = {r}:  m = {s.m}  N = {s.N}  T = {s.T}  N1 = {nev.counting_truncated(f, r, 'poles')}")

    for truncated in (True, False):
        v = hz.truncated_counterexample(f, VALUES, truncated=truncated)
        kind = "truncated" if truncated else "full multiplicity"
        print(f"{kind:>17}: lhs slope {v.lhs_tail_slope}, rhs slope {v.rhs_tail_slope} -> {v.verdict}")


if __name__ == "__main__":
    main()
