#!/usr/bin/env python3
"""Sweep the q-th root family z^q = x over the projective line.

Prints the ramification divisor across both charts, its degree, and the
predicted genus for each prime power, then a few thicker chart
equations for contrast.  Every accepted model must land at degree
2(q - 1) and genus 0: the function field always embeds in the rational
field of the q-th root of the coordinate.
"""

from muram import GlobalModel, KummerData, PGroup, Poly, predict_genus


def row(p, n, coeffs, label):
    kd = KummerData(PGroup(p, (n,)), (Poly(p, coeffs),))
    rep = predict_genus(GlobalModel(kd))
    print(
        f"  p^n={p**n:>2}  f={label:<14} R = {str(rep.divisor):<24}"
        f" deg {rep.deg_R:>2}   g(Y) = {rep.g_Y}"
    )


def main():
    print("q-th root family z^q = x:")
    for p, n in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]:
        row(p, n, [0, 1], "x")
    print("\nthicker chart equations:")
    row(2, 1, [0, 1, 1], "x(x+1)")
    row(3, 1, [0, 0, 1, 1], "x^2(x+1)")
    row(2, 2, [0, 0, 0, 1], "x^3")
    row(3, 2, [0, 0, 1], "x^2")


if __name__ == "__main__":
    main()
