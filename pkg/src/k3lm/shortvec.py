"""Exact enumeration of short vectors of a positive definite integer form.

Fincke-Pohst style search driven by a rational Cholesky-type decomposition.
Everything is done over ``Fraction``; no floating point enters the bounds,
so the enumeration is complete for arbitrarily large integer entries.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def _floor_sqrt(t: Fraction) -> int:
    """floor(sqrt(t)) for a non-negative rational t."""
    return isqrt(t.numerator * t.denominator) // t.denominator


def _le_sqrt(x: Fraction, t: Fraction) -> bool:
    """Exact test x <= sqrt(t), assuming t >= 0."""
    return x <= 0 or x * x <= t


def _floor_plus_sqrt(c: Fraction, t: Fraction) -> int:
    """Largest integer m with m <= c + sqrt(t)."""
    m = c.numerator // c.denominator + _floor_sqrt(t) + 2
    while not _le_sqrt(m - c, t):
        m -= 1
    return m


def _ceil_minus_sqrt(c: Fraction, t: Fraction) -> int:
    """Smallest integer m with m >= c - sqrt(t)."""
    return -_floor_plus_sqrt(-c, t)


def rational_decomposition(form):
    """Decompose Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2.

    Raises ValueError if the symmetric integer matrix is not positive
    definite (a non-positive pivot shows up).
    """
    n = len(form)
    q = [[Fraction(form[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for m in range(k, n):
                q[k][m] -= q[k][i] * q[i][m]
    return q


def short_vectors(form, bound: int) -> list[tuple[int, ...]]:
    """All integer vectors v (including 0 and both signs) with v^T A v <= bound.

    ``form`` is a symmetric positive definite integer matrix given as a
    sequence of rows.  Results are sorted lexicographically.
    """
    n = len(form)
    if bound < 0:
        return []
    q = rational_decomposition(form)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def descend(i: int, remaining: Fraction) -> None:
        c = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        t = remaining / q[i][i]
        lo = _ceil_minus_sqrt(-c, t)
        hi = _floor_plus_sqrt(-c, t)
        for xi in range(lo, hi + 1):
            x[i] = xi
            used = q[i][i] * (xi + c) ** 2
            if i == 0:
                out.append(tuple(x))
            else:
                descend(i - 1, remaining - used)
        x[i] = 0

    descend(n - 1, Fraction(bound))
    out.sort()
    return out
