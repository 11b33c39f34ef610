"""Gaussian elimination over an abstract exact field.

``K`` is any object exposing ``add``, ``sub``, ``mul``, ``inv`` on ints with
0 and 1 as the neutral elements (a ``BaseField`` or a ``FieldTower``).
Rows are lists of ints; nothing here mutates its input.
"""
from __future__ import annotations


def rref(rows, K):
    """Return (reduced rows, pivot columns). Pivot = first nonzero in column order."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        row = A[r]
        if row[c] != 1:
            s = K.inv(row[c])
            row = A[r] = [K.mul(s, x) if x else 0 for x in row]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [K.sub(a, K.mul(f, b)) if b else a for a, b in zip(A[i], row)]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(rows, K):
    return len(rref(rows, K)[1])


def det(rows, K):
    A = [list(r) for r in rows]
    n = len(A)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = K.sub(0, d)
        d = K.mul(d, A[c][c])
        s = K.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c]:
                f = K.mul(A[i][c], s)
                A[i] = [K.sub(a, K.mul(f, b)) if b else a for a, b in zip(A[i], A[c])]
    return d


def kernel(rows, ncols, K):
    """Basis of the right kernel {v : rows . v = 0}, one vector per free column."""
    R, pivots = rref(rows, K)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            if R[i][f]:
                v[pc] = K.sub(0, R[i][f])
        basis.append(v)
    return basis


def solve(rows, rhs, K):
    """One solution x of rows . x = rhs (free variables set to 0), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, K)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    return x


def rank_gf2(vectors):
    """Rank of ints read as bit vectors over F_2."""
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)
