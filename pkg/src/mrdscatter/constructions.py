"""Explicit families of scattered q-systems and the U_delta criterion machinery.

Families on F_{q^5}^2 (maximum scattered classes and the hyperplane family)

    PR_s      {(x, x^{q^s})}
    LP_{s,e}  {(x, x^{q^s} + e x^{q^{5-s}})},          N(e) not in {0, 1}
    W_{e,r}   {(e(x^q - x) + Tr(r x), x^q - x^{q^4})}, e != 0, Tr(e) = 0 != Tr(r)
    Z_z       {(x, z(x^q + x^{q^3}) + x^{q^2} + x^{q^4})}, N(z) = 1
    U_d(X_l)  {(x, x^q + d x^{q^4}) : Tr(l x) = 0},     N(d) = 1

plus Delsarte-Gabidulin systems V_k(<v>) and one binary example in F_{2^7}^3.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from mrdscatter.codes import RankCode
from mrdscatter.errors import (
    BudgetExceeded,
    DependentV,
    EvenCharacteristic,
    SpecInvariantViolation,
    WrongField,
    ZeroLambda,
)
from mrdscatter.gfarith import ker_trace_basis, norm_one_iter
from mrdscatter.linalg import EXT, Mat, fq_dim_of_span
from mrdscatter.report import FAIL, PASS, run_check
from mrdscatter.systems import QSystem, is_scattered


@dataclass(frozen=True)
class Gabidulin:
    v: Sequence[int]
    k: int


@dataclass(frozen=True)
class PR:
    s: int


@dataclass(frozen=True)
class LP:
    s: int
    eta: int


@dataclass(frozen=True)
class W:
    eta: int
    rho: int


@dataclass(frozen=True)
class Z:
    zk: int


@dataclass(frozen=True)
class UDelta:
    delta: int
    lam: int = 1


@dataclass(frozen=True)
class SporadicBinary:
    xi: Optional[int] = None


FAMILY_NAMES = {
    "gabidulin": Gabidulin,
    "pr": PR,
    "lp": LP,
    "w": W,
    "z": Z,
    "u-delta": UDelta,
    "sporadic": SporadicBinary,
}


def _need_quintic(F, name):
    if F.m != 5:
        raise WrongField(f"{name} lives in F_(q^5)^2, tower has m={F.m}")


def _power_basis(F):
    xi = F.primitive_elem
    return [F.pow(xi, i) for i in range(F.m)]


def validate_family(family, F):
    """Raise SpecInvariantViolation when the family parameters are inadmissible."""
    match family:
        case Gabidulin(v, k):
            if fq_dim_of_span(F, [[a] for a in v]) != len(v):
                raise DependentV("v must be F_q-independent")
            if not 1 <= k <= len(v) <= F.m:
                raise SpecInvariantViolation("need 1 <= k <= len(v) <= m")
        case PR(s):
            _need_quintic(F, "PR")
            if s not in (1, 2, 3, 4):
                raise SpecInvariantViolation("PR_s needs s in {1,..,4}")
        case LP(s, eta):
            _need_quintic(F, "LP")
            if s not in (1, 2):
                raise SpecInvariantViolation("LP_{s,eta} needs s in {1, 2}")
            if F.rel_norm(eta) in (0, 1):
                raise SpecInvariantViolation("LP_{s,eta} needs N(eta) not in {0, 1}")
        case W(eta, rho):
            _need_quintic(F, "W")
            if eta == 0 or F.rel_trace(eta) != 0 or F.rel_trace(rho) == 0:
                raise SpecInvariantViolation("W_{eta,rho} needs eta != 0, Tr(eta) = 0 != Tr(rho)")
        case Z(zk):
            _need_quintic(F, "Z")
            if F.rel_norm(zk) != 1:
                raise SpecInvariantViolation("Z_k needs N(k) = 1")
        case UDelta(delta, lam):
            _need_quintic(F, "U_delta")
            if lam == 0:
                raise ZeroLambda("lambda must be nonzero")
            if F.rel_norm(delta) != 1:
                raise SpecInvariantViolation("U_delta needs N(delta) = 1")
        case SporadicBinary(xi):
            if (F.p, F.e, F.m) != (2, 1, 7):
                raise WrongField("the binary example lives in F_(2^7)^3")
            if xi is not None and not F._is_primitive(xi):
                raise SpecInvariantViolation("xi must be a primitive element")
        case _:
            raise TypeError(f"unknown family {family!r}")


def build_family(family, F):
    validate_family(family, F)
    fr = F.frobenius
    match family:
        case Gabidulin(v, k):
            return QSystem(F, k, tuple(tuple(fr(a, i) for i in range(k)) for a in v))
        case PR(s):
            vecs = [(x, fr(x, s)) for x in _power_basis(F)]
        case LP(s, eta):
            vecs = [(x, F.add(fr(x, s), F.mul(eta, fr(x, 5 - s)))) for x in _power_basis(F)]
        case W(eta, rho):
            vecs = []
            for x in _power_basis(F):
                first = F.add(F.mul(eta, F.sub(fr(x, 1), x)), F.rel_trace(F.mul(rho, x)))
                vecs.append((first, F.sub(fr(x, 1), fr(x, 4))))
        case Z(zk):
            vecs = []
            for x in _power_basis(F):
                second = F.add(F.mul(zk, F.add(fr(x, 1), fr(x, 3))), F.add(fr(x, 2), fr(x, 4)))
                vecs.append((x, second))
        case UDelta(delta, lam):
            inv = F.inv(lam)
            vecs = []
            for t in ker_trace_basis(F):
                x = F.mul(inv, t)
                vecs.append((x, F.add(fr(x, 1), F.mul(delta, fr(x, 4)))))
        case SporadicBinary(xi):
            xi = F.primitive_elem if xi is None else xi
            c = F.pow(xi, 3)
            vecs = []
            for i in range(5):
                x = F.pow(xi, i)
                vecs.append((x, fr(x, 1), F.add(fr(x, 2), F.mul(c, fr(x, 6)))))
            vecs.append((F.pow(xi, 6), F.pow(xi, 27), F.pow(xi, 34)))
            return QSystem(F, 3, tuple(vecs))
    return QSystem(F, 2, tuple(vecs))


def gabidulin(F, v, k):
    """Delsarte-Gabidulin code with the k x n Moore matrix of v as generator."""
    validate_family(Gabidulin(tuple(v), k), F)
    rows = [[F.frobenius(a, i) for a in v] for i in range(k)]
    return RankCode(F, Mat.from_rows(F, rows, EXT))


def u_delta_normalize(F, delta, lam):
    """delta' with diag(lam, lam^q) U_delta(X_lam) = U_delta'(X_1)."""
    if lam == 0:
        raise ZeroLambda("lambda must be nonzero")
    if F.rel_norm(delta) != 1:
        raise SpecInvariantViolation("need N(delta) = 1")
    return F.mul(F.mul(delta, F.frobenius(lam, 1)), F.inv(F.frobenius(lam, F.m - 1)))


def f_delta(F, delta):
    """Coefficients (b, c) of the quadratic Y^2 + bY + c attached to delta."""
    d = delta
    n1 = F.mul(d, F.frobenius(d, 1))          # d^{q+1}
    n2 = F.mul(n1, F.frobenius(d, 2))         # d^{q^2+q+1}
    n3 = F.mul(n2, F.frobenius(d, 3))         # d^{q^3+q^2+q+1}
    b = F.sub(F.sub(F.add(F.sub(n3, n2), n1), d), 1)
    c = F.add(F.sub(F.neg(F.mul(n3, d)), n1), d)
    return b, c


def quad_has_root(F, b, c):
    """(True, root) if Y^2 + bY + c has a root in F_{q^m}, else (False, None)."""
    if F.p == 2:
        raise EvenCharacteristic("the discriminant test needs odd characteristic")
    disc = F.sub(F.mul(b, b), F.mul(4 % F.p, c))
    r = F.sqrt(disc)
    if r is None:
        return False, None
    half = F.inv(2 % F.p)
    return True, F.mul(F.sub(r, b), half)


def _need_enumerable(F):
    if not F.accelerated:
        raise BudgetExceeded(f"F_{F.q}^{F.m} is too large to enumerate")


def _crosscheck(F):
    counters = {"candidates": 0, "scattered": 0, "non_scattered": 0, "rootless": 0, "disagreements": 0}
    witness = None
    for delta in norm_one_iter(F):
        counters["candidates"] += 1
        scattered = is_scattered(build_family(UDelta(delta), F)).ok
        rootless = not quad_has_root(F, *f_delta(F, delta))[0]
        counters["scattered" if scattered else "non_scattered"] += 1
        counters["rootless"] += rootless
        if scattered != rootless:
            counters["disagreements"] += 1
            if witness is None:
                witness = {"delta": F.coords(delta), "scattered": scattered, "rootless": rootless}
        if delta == 1:
            counters["delta1_scattered"] = int(scattered)
    status = PASS if counters["disagreements"] == 0 else FAIL
    return status, witness, counters


def criterion_crosscheck(F):
    """U_delta scattered <=> f_delta rootless, for every norm-1 delta."""
    if F.p == 2:
        raise EvenCharacteristic("the criterion is stated for odd q")
    _need_quintic(F, "U_delta")
    _need_enumerable(F)
    return run_check(f"criterion_crosscheck q={F.q}", _crosscheck, F)


def _incomp(F):
    counters = {"candidates": 0, "norm1_solutions": 0, "all_solutions": 0}
    witness = None
    for d in range(1, F.order):
        if F.add(F.sub(F.mul(F.frobenius(d, 2), d), d), 1) == 0:
            counters["all_solutions"] += 1
            if F.rel_norm(d) == 1:
                counters["norm1_solutions"] += 1
                witness = witness or {"delta": F.coords(d)}
    counters["candidates"] = F.N // (F.q - 1)
    return (PASS if counters["norm1_solutions"] == 0 else FAIL), witness, counters


def incomp_scan(F):
    """Count norm-1 roots of d^{q^2+1} - d + 1; ``all_solutions`` ignores the norm."""
    _need_enumerable(F)
    return run_check(f"incomp_scan q={F.q}", _incomp, F)
