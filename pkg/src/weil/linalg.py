"""Small exact linear algebra over Fractions (and generic Gauss-Jordan over Exprs)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def rref(rows):
    """Reduced row echelon form over Fractions. Returns (matrix, pivot columns)."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return m, []
    ncol = len(m[0])
    pivots = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def row_basis(rows):
    """A basis (as Fraction rows) of the row space."""
    m, piv = rref(rows)
    return m[: len(piv)]


def det(mat) -> Fraction:
    m = [[Fraction(v) for v in r] for r in mat]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def inverse(mat):
    n = len(mat)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(mat)]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def signature(mat, tol: float = 1e-9):
    """(positive, negative, zero) eigenvalue counts of a symmetric matrix."""
    a = np.array([[float(v) for v in r] for r in mat], dtype=float)
    if a.size == 0:
        return (0, 0, 0)
    ev = np.linalg.eigvalsh((a + a.T) / 2)
    scale = max(1.0, float(np.max(np.abs(ev))))
    pos = int(np.sum(ev > tol * scale))
    negc = int(np.sum(ev < -tol * scale))
    return (pos, negc, len(ev) - pos - negc)
