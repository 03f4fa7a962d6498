"""Small exact linear algebra over a Field (matrices as lists of row tuples)."""

from __future__ import annotations

from .field import Field


def rref(F: Field, rows):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = F.inv(mat[r][c])
        mat[r] = [F.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat], pivots


def rank(F: Field, rows) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: Field, rows):
    """Basis of {x : A x = 0} for A given by rows; deterministic order."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = F.neg(red[r][fc])
        basis.append(tuple(vec))
    return basis


def solve(F: Field, rows, rhs):
    """One solution of A x = b, or None when inconsistent."""
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    red, pivots = rref(F, aug)
    ncols = len(rows[0]) if rows else 0
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return tuple(x)


def mat_vec(F: Field, rows, vec):
    out = []
    for row in rows:
        acc = 0
        for a, b in zip(row, vec):
            if a and b:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return tuple(out)
