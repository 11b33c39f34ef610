"""Linearized polynomials sum a_i x^{q^i} over F_{q^m}, reduced mod x^{q^m} - x."""
from __future__ import annotations

from dataclasses import dataclass

from mrdscatter.errors import TowerMismatch
from mrdscatter.gfarith import FieldTower
from mrdscatter.linalg import EXT, Mat, mat_rank


@dataclass(frozen=True)
class LinPoly:
    tower: FieldTower
    coeffs: tuple

    def __post_init__(self):
        m = self.tower.m
        c = tuple(self.coeffs)
        if len(c) > m:
            raise ValueError(f"a q-polynomial over F_q^{m} has at most {m} coefficients")
        object.__setattr__(self, "coeffs", c + (0,) * (m - len(c)))

    @classmethod
    def monomial(cls, tower, i, a=1):
        c = [0] * tower.m
        c[i % tower.m] = a
        return cls(tower, tuple(c))

    @classmethod
    def identity(cls, tower):
        return cls.monomial(tower, 0)

    @classmethod
    def trace(cls, tower):
        return cls(tower, (1,) * tower.m)

    def __call__(self, x):
        return lp_eval(self, x)

    def __matmul__(self, other):
        return lp_compose(self, other)

    def to_list(self):
        return [self.tower.coords(a) for a in self.coeffs]


def lp_eval(L, x):
    F = L.tower
    out = 0
    for i, a in enumerate(L.coeffs):
        if a:
            out = F.add(out, F.mul(a, F.frobenius(x, i)))
    return out


def lp_compose(L1, L2):
    """L1 o L2: c_k = sum_{i+j=k mod m} a_i b_j^{q^i}."""
    if L1.tower != L2.tower:
        raise TowerMismatch("q-polynomials over different towers")
    F = L1.tower
    m = F.m
    c = [0] * m
    for i, a in enumerate(L1.coeffs):
        if not a:
            continue
        for j, b in enumerate(L2.coeffs):
            if b:
                k = (i + j) % m
                c[k] = F.add(c[k], F.mul(a, F.frobenius(b, i)))
    return LinPoly(F, tuple(c))


def dickson_matrix(L):
    """Row r, column c holds a_{(c-r) mod m}^{q^r}."""
    F = L.tower
    m = F.m
    rows = [[F.frobenius(L.coeffs[(c - r) % m], r) for c in range(m)] for r in range(m)]
    return Mat.from_rows(F, rows, EXT)


def lp_rank(L):
    return mat_rank(dickson_matrix(L))


def lp_kernel_dim(L):
    return L.tower.m - lp_rank(L)
