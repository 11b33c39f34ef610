"""Exact dense matrices over F_q and F_{q^m}."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from mrdscatter import _elim
from mrdscatter.errors import AmbientMismatch, NonSquare, NotAnElement, TowerMismatch
from mrdscatter.gfarith import FieldTower

BASE, EXT = "base", "ext"
GL_WITNESS_MAX_DIM = 20


@dataclass(frozen=True)
class Mat:
    tower: FieldTower
    rows: int
    cols: int
    entries: tuple
    level: str = EXT

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match shape")
        if self.level not in (BASE, EXT):
            raise ValueError(f"unknown level {self.level!r}")
        if self.level == BASE and any(not self.tower.in_subfield(a) for a in self.entries):
            raise NotAnElement("base-level matrix has an entry outside F_q")

    @classmethod
    def from_rows(cls, tower, rows, level=EXT, cols=None):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(tower, len(rows), ncols, tuple(a for r in rows for a in r), level)

    @classmethod
    def from_cols(cls, tower, cols, level=EXT):
        return cls.from_rows(tower, list(zip(*cols)), level) if cols else cls(tower, 0, 0, (), level)

    @property
    def field(self):
        return self.tower.base if self.level == BASE else self.tower

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j):
        return list(self.entries[j::self.cols]) if self.cols else []

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def T(self):
        return Mat.from_rows(self.tower, [self.col(j) for j in range(self.cols)], self.level, cols=self.rows)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def to_dict(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "level": self.level,
            "entries": [self.tower.coords(a) for a in self.entries],
        }

    @classmethod
    def from_dict(cls, tower, d):
        entries = tuple(tower.elem(a) for a in d["entries"])
        return cls(tower, d["rows"], d["cols"], entries, d.get("level", EXT))


def identity(tower, n, level=BASE):
    return Mat.from_rows(tower, [[int(i == j) for j in range(n)] for i in range(n)], level, cols=n)


def _same_tower(*mats):
    t = mats[0].tower
    for M in mats[1:]:
        if M.tower != t:
            raise TowerMismatch("matrices live over different towers")
    return t


def mat_mul(A, B):
    F = _same_tower(A, B)
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch {A.rows}x{A.cols} @ {B.rows}x{B.cols}")
    level = BASE if A.level == B.level == BASE else EXT
    K = F.base if level == BASE else F
    Bc = [B.col(j) for j in range(B.cols)]
    out = []
    for i in range(A.rows):
        r = A.row(i)
        row = []
        for c in Bc:
            s = 0
            for a, b in zip(r, c):
                if a and b:
                    s = K.add(s, K.mul(a, b))
            row.append(s)
        out.append(row)
    return Mat.from_rows(F, out, level, cols=B.cols)


def mat_rank(M):
    return _elim.rank(M.to_rows(), M.field)


def mat_det(M):
    if M.rows != M.cols:
        raise NonSquare(f"{M.rows}x{M.cols} matrix has no determinant")
    return _elim.det(M.to_rows(), M.field)


def mat_rref(M):
    R, _ = _elim.rref(M.to_rows(), M.field)
    return Mat.from_rows(M.tower, R, M.level, cols=M.cols)


def mat_kernel(M):
    """Matrix whose rows span the right kernel {v : M v = 0}."""
    basis = _elim.kernel(M.to_rows(), M.cols, M.field)
    return Mat.from_rows(M.tower, basis, M.level, cols=M.cols)


def row_space_equal(A, B):
    if A.cols != B.cols:
        return False
    ra, rb = mat_rank(A), mat_rank(B)
    both = Mat.from_rows(A.tower, A.to_rows() + B.to_rows(), EXT, cols=A.cols)
    return ra == rb == mat_rank(both)


def fq_expand(F, vec):
    """F_q coordinates of a vector of F_{q^m} elements (k*m entries)."""
    out = []
    for a in vec:
        out.extend(F.digits(a))
    return out


def _pack_bits(F, vec):
    v, shift = 0, 0
    for a in vec:
        v |= a << shift
        shift += F.m
    return v


def fq_dim_of_span(F, vectors):
    """F_q-dimension of the F_q-span of vectors in F_{q^m}^k."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    k = len(vectors[0])
    if any(len(v) != k for v in vectors):
        raise AmbientMismatch("vectors of different lengths")
    if F.q == 2:
        return _elim.rank_gf2(_pack_bits(F, v) for v in vectors)
    return _elim.rank([fq_expand(F, v) for v in vectors], F.base)


def gl_witness(G, H):
    """Invertible A over F_q with H = G A, or None.

    Each column of A solves the same F_q-system obtained by expanding G's
    entries in F_q coordinates. Among several solutions the reduced-echelon
    particular one is tried first, then kernel combinations in lexicographic
    order until an invertible A appears.
    """
    F = _same_tower(G, H)
    if (G.rows, G.cols) != (H.rows, H.cols):
        raise ValueError("G and H must have the same shape")
    k, n, m = G.rows, G.cols, F.m
    K = F.base
    # equation (i, d): sum_r digit_d(G[i, r]) a_r = digit_d(H[i, c])
    system = []
    for i in range(k):
        dig = [F.digits(G[i, r]) for r in range(n)]
        for d in range(m):
            system.append([dig[r][d] for r in range(n)])
    particular = []
    for c in range(n):
        rhs = []
        for i in range(k):
            rhs.extend(F.digits(H[i, c]))
        x = _elim.solve(system, rhs, K)
        if x is None:
            return None
        particular.append(x)
    ker = _elim.kernel(system, n, K)
    if len(ker) * n > GL_WITNESS_MAX_DIM:
        raise RuntimeError(
            f"solution set has F_q-dimension {len(ker) * n} > {GL_WITNESS_MAX_DIM}; refusing to enumerate"
        )

    def assemble(cols):
        return Mat.from_rows(F, [list(r) for r in zip(*cols)], BASE, cols=n)

    if not ker:
        A = assemble(particular)
        return A if mat_det(A) else None
    for coeffs in itertools.product(range(F.q), repeat=len(ker) * n):
        cols = []
        for c in range(n):
            col = list(particular[c])
            for t, v in enumerate(ker):
                a = coeffs[c * len(ker) + t]
                if a:
                    col = [K.add(x, K.mul(a, y)) for x, y in zip(col, v)]
            cols.append(col)
        A = assemble(cols)
        if mat_det(A):
            return A
    return None
