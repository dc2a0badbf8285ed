"""Exact determinants and linear solves over Q."""
from __future__ import annotations

from fractions import Fraction

from .ring import Rational, as_rational


class SingularMatrixError(ArithmeticError):
    pass


def transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


def bareiss_determinant(rows) -> int:
    """Fraction-free Gaussian elimination over the integers.

    Every intermediate entry is itself a minor of the input, so all the
    divisions below are exact.
    """
    a = [[int(x) for x in row] for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1] if n else 1


def rational_determinant(rows) -> Rational:
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return as_rational(det)


def determinant(rows) -> Rational:
    """Bareiss when every entry is an integer, rational elimination otherwise."""
    if all(Fraction(x).denominator == 1 for row in rows for x in row):
        return bareiss_determinant(rows)
    return rational_determinant(rows)


class ExactSolver:
    """PLU factorisation over Q, reusable for many right-hand sides."""

    def __init__(self, rows):
        a = [[Fraction(x) for x in row] for row in rows]
        n = len(a)
        if any(len(row) != n for row in a):
            raise ValueError("solver needs a square matrix")
        perm = list(range(n))
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                raise SingularMatrixError(f"matrix is singular (no pivot in column {k})")
            if p != k:
                a[k], a[p] = a[p], a[k]
                perm[k], perm[p] = perm[p], perm[k]
            inv = 1 / a[k][k]
            for i in range(k + 1, n):
                if a[i][k]:
                    f = a[i][k] * inv
                    a[i][k] = f
                    for j in range(k + 1, n):
                        a[i][j] -= f * a[k][j]
        self.n = n
        self._lu = a
        self._perm = perm

    def solve(self, rhs) -> list[Rational]:
        n = self.n
        if len(rhs) != n:
            raise ValueError(f"right-hand side has length {len(rhs)}, expected {n}")
        lu = self._lu
        y = [Fraction(rhs[p]) for p in self._perm]
        for i in range(n):
            row = lu[i]
            y[i] -= sum((row[j] * y[j] for j in range(i) if row[j]), Fraction(0))
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            row = lu[i]
            s = y[i] - sum((row[j] * x[j] for j in range(i + 1, n) if row[j]), Fraction(0))
            x[i] = s / row[i]
        return [as_rational(v) for v in x]


def solve(rows, rhs) -> list[Rational]:
    return ExactSolver(rows).solve(rhs)
