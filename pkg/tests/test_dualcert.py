import itertools
import random

import pytest
from hypothesis import given, strategies as st

from mrdscatter.codes import RankCode, dual_code
from mrdscatter.dualcert import (
    cofactor_vector,
    dual_generators,
    expected_sigma_table,
    frob_vec,
    selfdual_witness,
    sigma_form,
    sigma_table,
    u_delta_generator,
)
from mrdscatter.errors import BadBasis, CertificateInvalid, NormViolation, WitnessNotFound
from mrdscatter.gfarith import ker_trace_basis, norm_one_iter, tower_build
from mrdscatter.linalg import BASE, EXT, Mat, fq_dim_of_span, mat_det, mat_mul, mat_rank, row_space_equal

F3 = tower_build(3, 1, 5)
F5 = tower_build(5, 1, 5)
NORM1 = list(norm_one_iter(F3))


def random_trace_basis(F, rng):
    """x_basis A for a random invertible A over F_q."""
    B = ker_trace_basis(F)
    while True:
        A = Mat.from_rows(F, [[rng.randrange(F.q) for _ in range(4)] for _ in range(4)], BASE)
        if mat_det(A):
            break
    out = []
    for j in range(4):
        x = 0
        for i in range(4):
            x = F.add(x, F.mul(B[i], A[i, j]))
        out.append(x)
    return out


def test_sigma_form_basics():
    xb = ker_trace_basis(F3)
    assert sigma_form(F3, xb, 0, [1, 0, 0, 0]) == xb[0]
    c = [5, 77, 130, 201]
    total = 0
    for i in range(4):
        total = F3.add(total, sigma_form(F3, xb, i, c))
    assert sigma_form(F3, xb, 4, c) == F3.neg(total)


def test_bad_basis():
    with pytest.raises(BadBasis):
        cofactor_vector(F3, [1, 3, 9, 27])  # trace(1) != 0
    xb = ker_trace_basis(F3)
    with pytest.raises(BadBasis):
        cofactor_vector(F3, [xb[0], xb[0], xb[1], xb[2]])
    with pytest.raises(BadBasis):
        cofactor_vector(F3, xb[:3])


@given(st.integers(0, 10**6))
def test_cofactor_vector_properties(seed):
    xb = random_trace_basis(F3, random.Random(seed))
    y, s = cofactor_vector(F3, xb)
    assert s != 0 and F3.frobenius(s, 1) == s
    assert all(F3.rel_trace(a) == 0 for a in y)
    assert fq_dim_of_span(F3, [[a] for a in y]) == 4
    sig = [sigma_form(F3, xb, i, y) for i in range(5)]
    assert sig == [0, 0, 0, s, F3.neg(s)]


@given(st.integers(0, 10**6))
def test_frobenius_shift_identity(seed):
    xb = random_trace_basis(F3, random.Random(seed))
    y, _ = cofactor_vector(F3, xb)
    for i, k in itertools.product(range(5), repeat=2):
        lhs = sigma_form(F3, xb, i, frob_vec(F3, y, k))
        rhs = F3.frobenius(sigma_form(F3, xb, (i - k) % 5, y), k)
        assert lhs == rhs


def test_sigma_table_rows():
    xb = ker_trace_basis(F3)
    y, s = cofactor_vector(F3, xb)
    d = NORM1[5]
    table = sigma_table(F3, xb, y, d)
    assert table == expected_sigma_table(F3, s, d)
    neg = F3.neg(s)
    assert [row[:3] for row in table] == [
        (0, 0, neg),
        (neg, 0, s),
        (s, neg, 0),
        (0, s, 0),
        (0, 0, 0),
    ]


def test_dual_generators_at_one():
    xb = ker_trace_basis(F3)
    G = u_delta_generator(F3, 1, xb)
    H = dual_generators(F3, 1, xb)
    assert not any(mat_mul(G, H.T).entries)
    assert mat_rank(H) == 2
    row0 = H.row(0)
    assert sigma_form(F3, xb, 0, row0) == 0
    assert F3.add(sigma_form(F3, xb, 1, row0), sigma_form(F3, xb, 4, row0)) == 0


@given(st.integers(0, 120), st.integers(0, 10**6))
def test_dual_generators_match_kernel(i, seed):
    d = NORM1[i]
    xb = random_trace_basis(F3, random.Random(seed))
    G = u_delta_generator(F3, d, xb)
    H = dual_generators(F3, d, xb)
    assert row_space_equal(dual_code(RankCode(F3, G)).G, H)


def test_norm_violation():
    with pytest.raises(NormViolation):
        dual_generators(F3, 2, ker_trace_basis(F3))


def test_certificates_q3_q5():
    cert = selfdual_witness(F3, 1)
    assert cert.verify()
    assert mat_mul(cert.G, cert.A) == cert.H
    rng = random.Random(0)
    for d in rng.sample(list(norm_one_iter(F5)), 3):
        assert selfdual_witness(F5, d).verify()


@given(st.integers(0, 120), st.integers(0, 10**6))
def test_certificates_random_bases(i, seed):
    xb = random_trace_basis(F3, random.Random(seed))
    assert selfdual_witness(F3, NORM1[i], xb).verify()


def test_tampered_dual_is_rejected():
    xb = ker_trace_basis(F3)
    H = dual_generators(F3, 1, xb)
    rows = H.to_rows()
    rows[0][0] = F3.add(rows[0][0], 1)
    bad = Mat.from_rows(F3, rows, EXT)
    with pytest.raises((WitnessNotFound, CertificateInvalid)):
        selfdual_witness(F3, 1, xb, H=bad)


def test_certificate_serializes():
    d = selfdual_witness(F3, NORM1[2]).to_dict()
    assert set(d) >= {"field", "delta", "x_basis", "y", "s", "G", "H", "A", "sigma_table"}
    assert len(d["sigma_table"]) == 5
