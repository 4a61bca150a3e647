"""Dense Gaussian elimination over an exact field.

Entries may be Fractions, QRationals or anything else with field
operations and a truthiness test for zero. Matrices are lists of rows.
"""

from __future__ import annotations


def rref(rows, ncols=None):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv if v else v for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols, zero, one):
    """Basis of {x : rows . x = 0}, each vector with a 1 in its free slot."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def independent_rows(rows):
    """Indices of a maximal set of linearly independent rows, greedily in order."""
    if not rows:
        return []
    cols = [list(c) for c in zip(*rows)]
    _, pivots = rref(cols, len(rows))
    return pivots


def solve(mat, rhs):
    """Unique solution of mat . x = rhs, or None if singular/inconsistent."""
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    red, pivots = rref(aug, len(mat[0]) + 1)
    if len(mat[0]) in pivots or len(pivots) != len(mat[0]):
        return None
    x = [None] * len(mat[0])
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return x


def inverse(mat):
    n = len(mat)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]
