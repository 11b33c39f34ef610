"""Self-duality certificates for the [4,2] codes C_delta attached to U_delta.

With x = (x_1, .., x_4) an F_q-basis of ker(Tr) in F_{q^5}, C_delta has generator
rows x and x^(q) + delta x^(q^4). The cofactor vector y (signed 3x3 Moore minors)
spans the dual together with its Frobenius shifts, and the certificate exhibits
A in GL(4, q) with H = G A.
"""
from __future__ import annotations

from dataclasses import dataclass

from mrdscatter.errors import (
    BadBasis,
    CertificateInvalid,
    EvenCharacteristic,
    NormViolation,
    WitnessNotFound,
    WrongField,
)
from mrdscatter.gfarith import FieldTower, ker_trace_basis
from mrdscatter.linalg import EXT, Mat, fq_dim_of_span, gl_witness, mat_det, mat_mul, mat_rank

SIGMA_COLUMNS = ("sigma0", "sigma1", "sigma4", "sigma1+delta*sigma4")


def _check_basis(F, x_basis):
    if F.m != 5:
        raise WrongField("certificates live in F_(q^5)")
    if len(x_basis) != 4:
        raise BadBasis("need exactly 4 elements")
    if any(F.rel_trace(a) for a in x_basis):
        raise BadBasis("basis elements must have trace 0")
    if fq_dim_of_span(F, [[a] for a in x_basis]) != 4:
        raise BadBasis("basis elements are F_q-dependent")


def frob_vec(F, v, i):
    return [F.frobenius(a, i) for a in v]


def sigma_form(F, x_basis, i, c):
    """sum_j x_j^{q^i} c_j."""
    _check_basis(F, x_basis)
    return _sigma(F, x_basis, i, c)


def _sigma(F, x_basis, i, c):
    out = 0
    for x, cj in zip(x_basis, c):
        out = F.add(out, F.mul(F.frobenius(x, i), cj))
    return out


def moore_det(F, xs):
    rows = [frob_vec(F, xs, i) for i in range(len(xs))]
    return mat_det(Mat.from_rows(F, rows, EXT))


def cofactor_vector(F, x_basis):
    """(y, s): y_j = (-1)^j det M_3(x without x_j) for j = 1..4, s = det M_4(x)."""
    _check_basis(F, x_basis)
    y = []
    for j in range(4):
        minor = moore_det(F, [x for t, x in enumerate(x_basis) if t != j])
        # j is 0-based here, so the sign (-1)^(j+1) matches 1-based indexing
        y.append(F.neg(minor) if j % 2 == 0 else minor)
    return y, moore_det(F, list(x_basis))


def sigma_table(F, x_basis, y, delta):
    """Rows k = 0..4 of (sigma0, sigma1, sigma4, sigma1 + delta sigma4) at y^(q^k)."""
    table = []
    for k in range(5):
        yk = frob_vec(F, y, k)
        s0, s1, s4 = (_sigma(F, x_basis, i, yk) for i in (0, 1, 4))
        table.append((s0, s1, s4, F.add(s1, F.mul(delta, s4))))
    return table


def expected_sigma_table(F, s, delta):
    """The same table predicted from sigma_i(y) = (0, 0, 0, s, -s) and Frobenius shifts."""
    base = [0, 0, 0, s, F.neg(s)]
    table = []
    for k in range(5):
        s0, s1, s4 = (F.frobenius(base[(i - k) % 5], k) for i in (0, 1, 4))
        table.append((s0, s1, s4, F.add(s1, F.mul(delta, s4))))
    return table


def _need_delta(F, delta):
    if F.p == 2:
        raise EvenCharacteristic("self-duality is stated for odd q")
    if F.rel_norm(delta) != 1:
        raise NormViolation("need N(delta) = 1")


def u_delta_generator(F, delta, x_basis):
    """2 x 4 generator with rows x and x^(q) + delta x^(q^4)."""
    second = [F.add(a, F.mul(delta, b)) for a, b in zip(frob_vec(F, x_basis, 1), frob_vec(F, x_basis, 4))]
    return Mat.from_rows(F, [list(x_basis), second], EXT)


def dual_generators(F, delta, x_basis):
    """2 x 4 matrix with rows y^(q^4) and y + delta y^(q^3)."""
    _need_delta(F, delta)
    y, _ = cofactor_vector(F, x_basis)
    second = [F.add(a, F.mul(delta, b)) for a, b in zip(y, frob_vec(F, y, 3))]
    return Mat.from_rows(F, [frob_vec(F, y, 4), second], EXT)


@dataclass(frozen=True)
class DualCertificate:
    tower: FieldTower
    delta: int
    x_basis: tuple
    y: tuple
    s: int
    G: Mat
    H: Mat
    A: Mat
    sigma_table: tuple

    def failures(self):
        F = self.tower
        bad = []
        if self.s == 0 or not F.in_subfield(self.s):
            bad.append("s is not in F_q^*")
        if any(F.rel_trace(a) for a in self.y) or fq_dim_of_span(F, [[a] for a in self.y]) != 4:
            bad.append("y is not a basis of ker(Tr)")
        if [tuple(r) for r in self.sigma_table] != expected_sigma_table(F, self.s, self.delta):
            bad.append("sigma table mismatch")
        if any(mat_mul(self.G, self.H.T).entries):
            bad.append("G H^T != 0")
        if mat_rank(self.H) != 2:
            bad.append("dual generators are dependent")
        if mat_det(self.A) == 0:
            bad.append("A is singular")
        if mat_mul(self.G, self.A) != self.H:
            bad.append("H != G A")
        return bad

    def verify(self):
        bad = self.failures()
        if bad:
            raise CertificateInvalid("; ".join(bad))
        return True

    def to_dict(self):
        F = self.tower
        c = F.coords
        return {
            "field": F.to_descriptor(),
            "delta": c(self.delta),
            "x_basis": [c(a) for a in self.x_basis],
            "y": [c(a) for a in self.y],
            "s": c(self.s),
            "G": self.G.to_dict(),
            "H": self.H.to_dict(),
            "A": self.A.to_dict(),
            "sigma_table": [[c(a) for a in row] for row in self.sigma_table],
        }


def selfdual_witness(F, delta, x_basis=None, H=None):
    """Assemble and verify the certificate; ``H`` overrides the computed dual generator."""
    _need_delta(F, delta)
    x_basis = tuple(ker_trace_basis(F) if x_basis is None else x_basis)
    y, s = cofactor_vector(F, x_basis)
    G = u_delta_generator(F, delta, x_basis)
    if H is None:
        H = dual_generators(F, delta, x_basis)
    A = gl_witness(G, H)
    if A is None:
        raise WitnessNotFound("no invertible A over F_q with H = G A")
    cert = DualCertificate(
        F, delta, x_basis, tuple(y), s, G, H, A, tuple(sigma_table(F, x_basis, y, delta))
    )
    cert.verify()
    return cert
