"""Exact rational linear algebra on small dense matrices.

Matrices are lists (or tuples) of rows; entries are ``int`` or
``fractions.Fraction``. Nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NotSymmetric, SingularSystem

Matrix = Sequence[Sequence]
Vector = Sequence


def as_fractions(m: Matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def transpose(m: Matrix) -> list[list]:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> list[list]:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: Vector) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Vector, v: Vector):
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return sum(x * y for x, y in zip(u, v))


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def is_symmetric(m: Matrix) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = as_fractions(m)
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : m x = 0}, one vector per free column (free entry 1)."""
    if not m:
        if ncols is None:
            raise DimensionMismatch("empty matrix needs an explicit column count")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(m[0])
    rows, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def solve(m: Matrix, b: Vector) -> list[Fraction]:
    """Unique solution of the square system m x = b."""
    n = len(m)
    if any(len(row) != n for row in m) or len(b) != n:
        raise DimensionMismatch("solve expects a square system")
    aug = [list(row) + [b[i]] for i, row in enumerate(m)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularSystem("system is singular")
    return [rows[i][n] for i in range(n)]


def _bareiss(m: list[list[int]]) -> int:
    n = len(m)
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(m: Matrix):
    """Exact determinant (``int`` for integer input, else ``Fraction``)."""
    n = len(m)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in m for x in row):
        return _bareiss([list(row) for row in m])
    rows = as_fractions(m)
    result = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            result = -result
        piv = rows[c][c]
        result *= piv
        for i in range(c + 1, n):
            f = rows[i][c] / piv
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result


def charpoly(m: Matrix) -> list[Fraction]:
    """Coefficients of det(xI - m), highest degree first (Faddeev-LeVerrier)."""
    n = len(m)
    a = as_fractions(m)
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        mk = matmul(a, mk)
        for i in range(n):
            mk[i][i] += coeffs[-1]
        am = matmul(a, mk)
        coeffs.append(-sum(am[i][i] for i in range(n)) / k)
    return coeffs


def sign_changes(seq: Sequence) -> int:
    signs = [x > 0 for x in seq if x != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def signature(m: Matrix) -> tuple[int, int, int]:
    """(n_plus, n_zero, n_minus) of a symmetric rational matrix.

    The characteristic polynomial of a symmetric matrix has only real
    roots, so Descartes' rule of signs counts positive roots exactly.
    """
    if not is_symmetric(m):
        raise NotSymmetric("signature needs a symmetric matrix")
    n = len(m)
    p = charpoly(m)
    n_zero = 0
    while len(p) > 1 and p[-1] == 0:
        p.pop()
        n_zero += 1
    n_plus = sign_changes(p)
    deg = len(p) - 1
    n_minus = sign_changes([c * (-1) ** (deg - i) for i, c in enumerate(p)])
    assert n_plus + n_zero + n_minus == n
    return n_plus, n_zero, n_minus
