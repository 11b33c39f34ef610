import random

import pytest
from hypothesis import given, strategies as st

from mrdscatter.checks import random_code, random_fq_independent, random_fq_matrix
from mrdscatter.codes import (
    RankCode,
    dual_code,
    from_system,
    is_extendable,
    is_mrd,
    min_rank_distance,
    projective_messages,
    puncture,
    rank_weight,
    singleton_rhs,
    to_system,
)
from mrdscatter.constructions import SporadicBinary, UDelta, build_family, gabidulin
from mrdscatter.errors import (
    BadPuncturingMatrix,
    BudgetExceeded,
    DegenerateCode,
    DegenerateSystem,
    NotMRDInput,
    RankCollapse,
    UnsupportedShape,
)
from mrdscatter.gfarith import tower_build
from mrdscatter.linalg import BASE, Mat, fq_dim_of_span, gl_witness, identity, mat_mul, row_space_equal
from mrdscatter.systems import QSystem, is_h_scattered

from oracles import brute_min_distance

F3 = tower_build(3, 1, 5)
POWER = [F3.xi_pow(i) for i in range(5)]


def test_rank_weight_examples():
    x = F3.primitive_elem
    assert rank_weight(F3, [0, 0, 0, 0]) == 0
    assert rank_weight(F3, [1, x, F3.pow(x, 2), F3.pow(x, 3)]) == 4
    assert rank_weight(F3, [1, 1, 1, 1]) == 1


@given(st.integers(0, 10**6), st.integers(1, 242))
def test_rank_weight_scaling_invariant(seed, lam):
    rng = random.Random(seed)
    c = [rng.randrange(243) for _ in range(4)]
    assert rank_weight(F3, [F3.mul(lam, a) for a in c]) == rank_weight(F3, c)


def test_projective_message_count():
    assert sum(1 for _ in projective_messages(F3, 2)) == 244


def test_gabidulin_and_u1_distances():
    G = gabidulin(F3, POWER[:4], 2)
    assert min_rank_distance(G) == 3 and is_mrd(G)
    U1 = build_family(UDelta(1), F3)
    C = from_system(U1)
    assert (C.k, C.n) == (2, 4)
    assert min_rank_distance(C) == 3 == singleton_rhs(C)
    assert is_mrd(C)


def test_degenerate_k1_code():
    C = RankCode.from_rows(F3, [[5, 5, 9]])  # 5 = 2 + x, 9 = x^2
    assert min_rank_distance(C) == 2
    assert not C.is_nondegenerate()
    with pytest.raises(DegenerateCode):
        to_system(C)


def test_non_mrd_code_with_rank_one_word():
    C = RankCode.from_rows(F3, [[1, 1, 1, 1], [0, 1, 3, 9]])
    assert min_rank_distance(C) == 1
    assert not is_mrd(C)


def test_shape_errors():
    C = RankCode.from_rows(F3, [[1, 3, 9, 27, 81, 1]])
    with pytest.raises(UnsupportedShape):
        is_mrd(C)
    with pytest.raises(RankCollapse):
        RankCode.from_rows(F3, [[1, 2], [2, 1]])
    with pytest.raises(BudgetExceeded):
        min_rank_distance(gabidulin(F3, POWER[:4], 2), budget=10)


@pytest.mark.parametrize("p,m,n", [(2, 4, 3), (2, 4, 4), (3, 3, 3), (2, 3, 3)])
def test_min_distance_matches_brute_force(p, m, n):
    F = tower_build(p, 1, m)
    rng = random.Random(p * m * n)
    for _ in range(3):
        C = random_code(F, 2, n, rng, nondegenerate=False)
        assert min_rank_distance(C) == brute_min_distance(C)


def test_system_roundtrip():
    V2 = QSystem(F3, 2, tuple((x, F3.frobenius(x, 1)) for x in POWER))
    C = from_system(V2)
    assert C.G == gabidulin(F3, POWER, 2).G
    assert to_system(C).basis == V2.basis
    D = from_system(to_system(C))
    A = gl_witness(C.G, D.G)
    assert A is not None and mat_mul(C.G, A) == D.G
    with pytest.raises(DegenerateSystem):
        from_system(QSystem(F3, 2, ((1, 0), (3, 0))))


@pytest.mark.parametrize("q,m", [(2, 4), (2, 5), (3, 4), (3, 5)])
def test_mrd_iff_scattered(q, m):
    F = tower_build(q, 1, m)
    rng = random.Random(q * 31 + m)
    for _ in range(20):
        C = random_code(F, 2, rng.randint(2, m), rng)
        assert is_mrd(C) == is_h_scattered(to_system(C), 1).ok


def test_puncture_examples():
    C = gabidulin(F3, POWER, 2)
    assert puncture(C, identity(F3, 5)).G == C.G
    A = Mat.from_rows(F3, [[int(i == j) for j in range(4)] for i in range(5)], BASE, cols=4)
    assert puncture(C, A).G == gabidulin(F3, POWER[:4], 2).G
    with pytest.raises(BadPuncturingMatrix):
        puncture(C, Mat.from_rows(F3, [[1, 1]] * 5, BASE, cols=2))


@given(st.integers(0, 10**6))
def test_puncture_contained_in_system(seed):
    rng = random.Random(seed)
    C = random_code(F3, 2, 4, rng)
    A = random_fq_matrix(F3, 4, 3, rng)
    P = puncture(C, A)
    U, V = to_system(C), to_system(P)
    assert fq_dim_of_span(F3, list(U.basis) + list(V.basis)) == U.n


@given(st.integers(0, 10**6))
def test_punctured_gabidulin_stays_mrd(seed):
    rng = random.Random(seed)
    C = gabidulin(F3, random_fq_independent(F3, 5, rng), 2)
    assert is_mrd(puncture(C, random_fq_matrix(F3, 5, 4, rng)))


@given(st.integers(0, 10**6), st.integers(2, 5))
def test_dual_properties(seed, n):
    rng = random.Random(seed)
    C = random_code(F3, rng.randint(1, n - 1), n, rng, nondegenerate=False)
    D = dual_code(C)
    assert D.k == n - C.k
    assert not any(mat_mul(C.G, D.G.T).entries)
    assert row_space_equal(dual_code(D).G, C.G)


def test_dual_of_42_is_42():
    D = dual_code(from_system(build_family(UDelta(1), F3)))
    assert (D.k, D.n) == (2, 4)


def test_extendability_of_codes(F2_7):
    C = from_system(build_family(UDelta(1), F3))
    assert is_extendable(C) is None
    G4 = gabidulin(F3, POWER[:4], 2)
    ext = is_extendable(G4)
    assert ext is not None and (ext.k, ext.n) == (2, 5) and is_mrd(ext)
    with pytest.raises(NotMRDInput):
        is_extendable(RankCode.from_rows(F3, [[1, 1, 1, 1], [0, 1, 3, 9]]))
    S = from_system(build_family(SporadicBinary(), F2_7))
    assert min_rank_distance(S) == 4


def test_serialization_roundtrip():
    C = gabidulin(F3, POWER[:4], 2)
    assert RankCode.from_dict(F3, C.to_dict()) == C
