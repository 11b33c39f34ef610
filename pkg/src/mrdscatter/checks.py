"""Checks that wrap the library calls into VerificationReports."""
from __future__ import annotations

import random

from mrdscatter.codes import (
    RankCode,
    dual_code,
    from_system,
    is_mrd,
    min_weight_codeword,
    projective_count,
    puncture,
    singleton_rhs,
    to_system,
)
from mrdscatter.constructions import UDelta, build_family, gabidulin
from mrdscatter.dualcert import selfdual_witness
from mrdscatter.errors import CertificateInvalid, DegenerateCode, RankCollapse, WitnessNotFound
from mrdscatter.gfarith import tower_build
from mrdscatter.linalg import BASE, EXT, Mat, fq_dim_of_span, mat_mul, mat_rank, row_space_equal
from mrdscatter.report import FAIL, PASS, run_check
from mrdscatter.systems import (
    DEFAULT_CANDIDATE_BUDGET,
    DEFAULT_SUBSPACE_BUDGET,
    bound_max_dim,
    bound_maximal_lower,
    extendability_search,
    is_evasive,
    weight_dim,
)


def _vec(F, v):
    return [F.coords(a) for a in v]


def check_evasive(U, h, r, *, budget=DEFAULT_SUBSPACE_BUDGET, name=None):
    def body():
        v = is_evasive(U, h, r, budget=budget)
        witness = None
        if not v.ok:
            witness = {"subspace": v.witness.to_dict(), "weight": weight_dim(U, v.witness)}
        counters = {"n": U.n, "subspaces_checked": v.checked}
        return (PASS if v.ok else FAIL), witness, counters

    return run_check(name or f"evasive h={h} r={r}", body)


def check_scattered(U, h=1, **kw):
    return check_evasive(U, h, h, name=f"scattered h={h}", **kw)


def check_mrd(C, *, budget=10**7, name="mrd"):
    def body():
        d, msg = min_weight_codeword(C, budget=budget)
        ok = d == singleton_rhs(C)
        witness = None if ok else {"message": _vec(C.tower, msg), "codeword": _vec(C.tower, C.encode(msg))}
        counters = {"k": C.k, "n": C.n, "d": d, "singleton": singleton_rhs(C), "codewords": projective_count(C)}
        return (PASS if ok else FAIL), witness, counters

    return run_check(name, body)


def check_maximal(U, h=1, *, budget=DEFAULT_CANDIDATE_BUDGET, workers=1, name=None):
    def body():
        res = extendability_search(U, h, budget=budget, workers=workers)
        witness = None if res.maximal else {"extension": _vec(U.tower, res.witness)}
        counters = {
            "n": U.n,
            "candidates": res.candidates,
            "tested": res.tested,
            "lower_bound": bound_maximal_lower(U.k, U.tower.m, h),
        }
        return (PASS if res.maximal else FAIL), witness, counters, {"method": res.method}

    return run_check(name or f"maximally scattered h={h}", body)


def check_dual(C, name="dual"):
    """Dual of the dual is C and G H^T = 0."""
    def body():
        D = dual_code(C)
        DD = dual_code(D)
        orth = not any(mat_mul(C.G, D.G.T).entries)
        same = row_space_equal(C.G, DD.G)
        counters = {"k": C.k, "n": C.n, "dual_k": D.k, "orthogonal": int(orth), "double_dual_equal": int(same)}
        return (PASS if orth and same else FAIL), None, counters

    return run_check(name, body)


def check_selfdual(F, deltas, x_basis=None, name=None):
    def body():
        verified = 0
        witness = None
        for d in deltas:
            try:
                selfdual_witness(F, d, x_basis)
                verified += 1
            except (WitnessNotFound, CertificateInvalid) as exc:
                witness = witness or {"delta": F.coords(d), "error": str(exc)}
        counters = {"deltas": len(deltas), "verified": verified}
        return (PASS if verified == len(deltas) else FAIL), witness, counters

    return run_check(name or f"selfdual q={F.q}", body)


def check_u_delta_code(F, delta=1, name=None):
    """U_delta gives a nondegenerate [4,2] MRD code."""
    U = build_family(UDelta(delta), F)
    return check_mrd(from_system(U), name=name or f"u-delta mrd q={F.q}")


# -- random instances --------------------------------------------------------

def random_element(F, rng):
    return rng.randrange(F.order)


def random_code(F, k, n, rng, nondegenerate=True):
    while True:
        rows = [[random_element(F, rng) for _ in range(n)] for _ in range(k)]
        G = Mat.from_rows(F, rows, EXT)
        if mat_rank(G) != k:
            continue
        C = RankCode(F, G)
        if nondegenerate and not C.is_nondegenerate():
            continue
        return C


def random_fq_matrix(F, rows, cols, rng, full_col_rank=True):
    while True:
        A = Mat.from_rows(F, [[rng.randrange(F.q) for _ in range(cols)] for _ in range(rows)], BASE, cols=cols)
        if not full_col_rank or mat_rank(A) == cols:
            return A


def random_fq_independent(F, count, rng):
    while True:
        v = [random_element(F, rng) for _ in range(count)]
        if fq_dim_of_span(F, [[a] for a in v]) == count:
            return v


def _algebra_instance(rng):
    q = rng.choice((2, 3))
    m = rng.choice((4, 5))
    F = tower_build(q, 1, m)
    n = rng.randint(3, m)
    C = random_code(F, 2, n, rng)
    fails = []
    if not row_space_equal(dual_code(dual_code(C)).G, C.G):
        fails.append("double dual")
    A = random_fq_matrix(F, n, n - 1, rng)
    try:
        P = puncture(C, A)
        U, Up = to_system(C), to_system(P)
        if fq_dim_of_span(F, list(U.basis) + list(Up.basis)) != U.n:
            fails.append("punctured system not contained")
    except (DegenerateCode, RankCollapse):
        pass  # G A may legitimately lose rank or become degenerate
    return fails


def _gabidulin_instance(rng, q):
    F = tower_build(q, 1, 5)
    C = gabidulin(F, random_fq_independent(F, 5, rng), 2)
    P = puncture(C, random_fq_matrix(F, 5, 4, rng))
    return is_mrd(C) and is_mrd(P)


def check_code_algebra(instances=100, seed=0, name="code algebra"):
    """Double dual, puncturing containment and Gabidulin [5,2] -> [4,2] on random instances."""
    def body():
        rng = random.Random(seed)
        bad = 0
        witness = None
        for i in range(instances):
            fails = _algebra_instance(rng)
            if not _gabidulin_instance(rng, rng.choice((2, 3))):
                fails.append("punctured Gabidulin not MRD")
            if fails:
                bad += 1
                witness = witness or {"instance": i, "failures": fails}
        counters = {"instances": instances, "failures": bad, "seed": seed}
        return (PASS if bad == 0 else FAIL), witness, counters

    return run_check(name, body)


BOUND_GRID = [(k, m, h) for k in (2, 3, 4) for m in range(3, 9) for h in range(1, k)]


def check_bounds(name="bounds"):
    def body():
        table = [
            {"k": k, "m": m, "h": h, "max_dim": bound_max_dim(k, m, h), "maximal_lower": bound_maximal_lower(k, m, h)}
            for k, m, h in BOUND_GRID
        ]
        return PASS, None, {"grid_points": len(table)}, {"table": table}

    return run_check(name, body)
