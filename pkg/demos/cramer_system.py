"""Solve a small max-plus linear system with the tropical Cramer rule.

We want x with max(A x, b) attained at least twice in every row.  The
determinant of A and the permanents of A with one column replaced by b give
an upper bound on every balanced solution, and the bound is itself balanced.

    python demos/cramer_system.py
"""

from fractions import Fraction as F

from tropnev import check_balance, cramer_report, tmat_mul, tropical_determinant
from tropnev.core import format_scalar

A = [[F(0), F(-1), F(1)], [F(0), F(0), F(2)], [F(0), F(1), F(0)]]
b = [F(0), F(-1), F(1)]


def show(v):
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"


def main():
    rep = cramer_report(A, b)
    print("|A| =", format_scalar(rep.determinant.value), "attained by permutation", rep.determinant.witness)
    print("|B_i| =", show(rep.permanents))
    print("B_i singular:", rep.singular)
    print("upper bound |B_i| - |A| =", show(rep.upper_bound))
    print("bound is balanced:", check_balance(A, rep.upper_bound, b))

    # the determinant of a product can strictly exceed the product of determinants
    P = [[1, 2, 0], [1, 0, 1], [0, 1, 1]]
    Q = [[-1, 1, -1], [0, 0, 1], [1, 2, 1]]
    PQ = tmat_mul(P, Q)
    d = [tropical_determinant(M).value for M in (P, Q, PQ)]
    print("P (x) Q =", [show(r) for r in PQ.to_rows()])
    print(f"|P| + |Q| = {d[0] + d[1]} <= {d[2]} = |P (x) Q|")


if __name__ == "__main__":
    main()
