"""F_{q^m}-linear rank-metric codes in vector representation."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from mrdscatter.errors import (
    BadPuncturingMatrix,
    BudgetExceeded,
    DegenerateCode,
    DegenerateSystem,
    NotMRDInput,
    RankCollapse,
    TowerMismatch,
    UnsupportedShape,
)
from mrdscatter.gfarith import FieldTower
from mrdscatter.linalg import BASE, EXT, Mat, fq_dim_of_span, mat_kernel, mat_mul, mat_rank
from mrdscatter.systems import QSystem, extendability_search

DEFAULT_CODEWORD_BUDGET = 10**7


@dataclass(frozen=True)
class RankCode:
    tower: FieldTower
    G: Mat

    def __post_init__(self):
        if self.G.tower != self.tower:
            raise TowerMismatch("generator matrix over a different tower")
        if not 1 <= self.G.rows <= self.G.cols:
            raise UnsupportedShape("need n >= k >= 1")
        if mat_rank(self.G) != self.G.rows:
            raise RankCollapse("generator matrix does not have full rank k")

    @classmethod
    def from_rows(cls, tower, rows):
        return cls(tower, Mat.from_rows(tower, rows, EXT))

    @property
    def k(self):
        return self.G.rows

    @property
    def n(self):
        return self.G.cols

    def encode(self, msg):
        F = self.tower
        out = [0] * self.n
        for u, row in zip(msg, self.G.to_rows()):
            if u:
                out = [F.add(o, F.mul(u, g)) for o, g in zip(out, row)]
        return out

    def is_nondegenerate(self):
        return fq_dim_of_span(self.tower, [self.G.col(j) for j in range(self.n)]) == self.n

    def to_dict(self):
        return {"k": self.k, "n": self.n, "G": self.G.to_dict()}

    @classmethod
    def from_dict(cls, tower, d):
        return cls(tower, Mat.from_dict(tower, d["G"]))


def rank_weight(F, c):
    """F_q-dimension of the span of the coordinates of c."""
    return fq_dim_of_span(F, [[a] for a in c])


def projective_messages(F, k):
    """One message per F_{q^m}-projective class: first nonzero entry is 1."""
    for j in range(k):
        for tail in itertools.product(range(F.order), repeat=k - 1 - j):
            yield (0,) * j + (1,) + tail


def min_weight_codeword(C, *, budget=DEFAULT_CODEWORD_BUDGET):
    """(d, message) for a message whose codeword has minimum rank weight."""
    F = C.tower
    classes = (F.order**C.k - 1) // (F.order - 1)
    if classes > budget:
        raise BudgetExceeded(f"{classes} projective codewords exceed budget {budget}")
    best, arg = C.n + 1, None
    for msg in projective_messages(F, C.k):
        w = rank_weight(F, C.encode(msg))
        if w < best:
            best, arg = w, msg
            if best == 1:
                break
    return best, arg


def min_rank_distance(C, *, budget=DEFAULT_CODEWORD_BUDGET):
    return min_weight_codeword(C, budget=budget)[0]


def projective_count(C):
    return (C.tower.order**C.k - 1) // (C.tower.order - 1)


def singleton_rhs(C):
    return C.n - C.k + 1


def is_mrd(C, **kw):
    if C.n > C.tower.m:
        raise UnsupportedShape("only n <= m codes are supported")
    return min_rank_distance(C, **kw) == singleton_rhs(C)


def to_system(C):
    cols = [tuple(C.G.col(j)) for j in range(C.n)]
    if fq_dim_of_span(C.tower, cols) != C.n:
        raise DegenerateCode("generator columns are F_q-dependent")
    return QSystem(C.tower, C.k, tuple(cols))


def from_system(U):
    if not U.is_nondegenerate():
        raise DegenerateSystem("U does not span F_{q^m}^k")
    return RankCode(U.tower, Mat.from_cols(U.tower, U.basis))


def puncture(C, A):
    """The code {cA : c in C} for A an n x n' matrix over F_q of rank n'."""
    if A.tower != C.tower:
        raise TowerMismatch("puncturing matrix over a different tower")
    if A.level != BASE or A.rows != C.n or mat_rank(A) != A.cols:
        raise BadPuncturingMatrix("A must be an n x n' matrix over F_q of rank n'")
    GA = mat_mul(C.G, A)
    if mat_rank(GA) != C.k:
        raise RankCollapse("G A lost F_{q^m}-rank")
    return RankCode(C.tower, GA)


def dual_code(C):
    if C.k == C.n:
        raise UnsupportedShape("the dual of the full space is the zero code")
    H = mat_kernel(C.G)
    return RankCode(C.tower, Mat(H.tower, H.rows, H.cols, H.entries, EXT))


def is_extendable(C, **kw):
    """An MRD [n+1, k] code puncturing to C, or None when C is non-extendable."""
    if C.n >= C.tower.m:
        raise UnsupportedShape("extension needs n < m")
    if not is_mrd(C):
        raise NotMRDInput("C is not MRD")
    res = extendability_search(to_system(C), C.k - 1, **kw)
    if res.witness is None:
        return None
    ext = RankCode(C.tower, Mat.from_cols(C.tower, [tuple(C.G.col(j)) for j in range(C.n)] + [res.witness]))
    if not is_mrd(ext):
        raise AssertionError("extension is not MRD")
    return ext
