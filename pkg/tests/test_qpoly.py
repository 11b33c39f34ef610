import math
import random

import pytest
from hypothesis import given, strategies as st

from mrdscatter.errors import TowerMismatch
from mrdscatter.gfarith import tower_build
from mrdscatter.linalg import identity, mat_mul
from mrdscatter.qpoly import LinPoly, dickson_matrix, lp_compose, lp_eval, lp_kernel_dim, lp_rank

from oracles import kernel_size

F3 = tower_build(3, 1, 5)
coeffs = st.lists(st.integers(0, 242), min_size=5, max_size=5)


def sparse_poly(rng, F=F3):
    # random supports so that small ranks show up too
    c = [rng.randrange(F.order) if rng.random() < 0.5 else 0 for _ in range(F.m)]
    return LinPoly(F, tuple(c))


def test_identity_and_trace():
    I = LinPoly.identity(F3)
    assert all(lp_eval(I, c) == c for c in range(243))
    assert lp_eval(LinPoly.trace(F3), 1) == 5 % 3
    assert lp_rank(LinPoly.trace(F3)) == 1


def test_frobenius_minus_identity_rank():
    L = LinPoly(F3, (F3.neg(1), 1))
    assert lp_rank(L) == 4
    assert lp_kernel_dim(L) == 1


@given(coeffs, st.integers(0, 242), st.integers(0, 242), st.integers(0, 2), st.integers(0, 2))
def test_eval_is_fq_linear(c, x, y, a, b):
    L = LinPoly(F3, tuple(c))
    lhs = lp_eval(L, F3.add(F3.mul(a, x), F3.mul(b, y)))
    rhs = F3.add(F3.mul(a, lp_eval(L, x)), F3.mul(b, lp_eval(L, y)))
    assert lhs == rhs


def test_compose_examples():
    q = LinPoly.monomial(F3, 1)
    assert lp_compose(q, q) == LinPoly.monomial(F3, 2)
    L = LinPoly(F3, (4, 0, 17, 0, 200))
    assert lp_compose(L, LinPoly.identity(F3)) == L
    assert lp_compose(LinPoly.identity(F3), L) == L
    with pytest.raises(TowerMismatch):
        lp_compose(L, LinPoly.identity(tower_build(2, 1, 5)))


@given(coeffs, coeffs)
def test_compose_matches_evaluation(c1, c2):
    L1, L2 = LinPoly(F3, tuple(c1)), LinPoly(F3, tuple(c2))
    L = L1 @ L2
    assert all(L(x) == L1(L2(x)) for x in range(243))


def test_dickson_shapes():
    assert dickson_matrix(LinPoly.identity(F3)) == identity(F3, 5, level="ext")
    D = dickson_matrix(LinPoly.monomial(F3, 1))
    for r in range(5):
        for c in range(5):
            assert D[r, c] == int(c == (r + 1) % 5)
    a = (11, 22, 33, 44, 55)
    D = dickson_matrix(LinPoly(F3, a))
    assert D[2, 0] == F3.frobenius(a[3], 2)  # a_{m-2}^{q^2}
    assert D[1, 0] == F3.frobenius(a[4], 1)


@given(coeffs, coeffs)
def test_dickson_multiplicative(c1, c2):
    L1, L2 = LinPoly(F3, tuple(c1)), LinPoly(F3, tuple(c2))
    assert dickson_matrix(L1 @ L2) == mat_mul(dickson_matrix(L1), dickson_matrix(L2))
    assert lp_rank(L1 @ L2) <= min(lp_rank(L1), lp_rank(L2))


@given(st.integers(0, 10**6))
def test_rank_matches_kernel_enumeration(seed):
    L = sparse_poly(random.Random(seed))
    zeros = kernel_size(F3, L)
    assert lp_rank(L) == 5 - round(math.log(zeros, 3))


@pytest.mark.parametrize("p,e,m", [(2, 1, 4), (2, 1, 6), (2, 2, 3), (3, 1, 4), (5, 1, 3)])
def test_kernel_dim_other_fields(p, e, m):
    F = tower_build(p, e, m)
    rng = random.Random(p * 100 + m)
    for _ in range(15):
        L = sparse_poly(rng, F)
        assert lp_kernel_dim(L) == round(math.log(kernel_size(F, L), F.q))
