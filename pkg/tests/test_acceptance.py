"""Acceptance criteria, each with its stated time budget.

Every test prints one ``PASS``/``FAIL`` line (visible in ``pytest -v`` output
and in ``-s`` mode) before asserting.
"""
import functools
import math
import random
import time

import pytest

from mrdscatter.checks import check_code_algebra, random_code
from mrdscatter.codes import from_system, is_mrd, min_weight_codeword, projective_count, to_system
from mrdscatter.constructions import SporadicBinary, UDelta, build_family, criterion_crosscheck, incomp_scan
from mrdscatter.dualcert import selfdual_witness
from mrdscatter.gfarith import norm_one_iter, tower_build
from mrdscatter.linalg import BASE, mat_mul
from mrdscatter.qpoly import LinPoly, lp_rank
from mrdscatter.systems import (
    bound_max_dim,
    bound_maximal_lower,
    enumerate_scattered,
    extendability_search,
    is_h_scattered,
    subspace_count,
)

from oracles import kernel_size, max_point_weight

F3 = tower_build(3, 1, 5)
F5 = tower_build(5, 1, 5)


@pytest.fixture
def verdict(capsys):
    """Call verdict(label, ok, seconds, limit) to print and assert one criterion."""
    def emit(label, ok, seconds, limit=None):
        in_time = limit is None or seconds < limit
        status = "PASS" if ok and in_time else "FAIL"
        budget = "" if limit is None else f" (limit {limit:g} s)"
        with capsys.disabled():
            print(f"\n{status} {label}: {seconds:.2f} s{budget}")
        assert ok, label
        assert in_time, f"{label} took {seconds:.2f} s"

    return emit


@functools.cache
def u1_extension():
    U = build_family(UDelta(1), F3)
    return U, extendability_search(U, 1)


@functools.cache
def sporadic_system():
    F = tower_build(2, 1, 7)
    return build_family(SporadicBinary(), F)


def test_ac1_u1_code_is_mrd(verdict):
    t0 = time.perf_counter()
    C = from_system(build_family(UDelta(1), F3))
    d, _ = min_weight_codeword(C)
    ok = (C.k, C.n) == (2, 4) and C.is_nondegenerate() and projective_count(C) == 244 and d == 3
    verdict("AC1 U_1 at q=3 is a nondegenerate [4,2,3] MRD code", ok, time.perf_counter() - t0, 1)


def test_ac2_criterion_equivalence(verdict):
    t0 = time.perf_counter()
    reps = [criterion_crosscheck(F) for F in (F3, F5)]
    ok = all(r.passed and r.counters["disagreements"] == 0 for r in reps)
    ok = ok and [r.counters["candidates"] for r in reps] == [121, 781]
    verdict("AC2 scattered iff quadratic rootless, q in {3,5}", ok, time.perf_counter() - t0, 30)


def test_ac3_no_norm_one_solutions(verdict):
    t0 = time.perf_counter()
    reps = [incomp_scan(F) for F in (F3, F5)]
    ok = all(r.passed and r.counters["norm1_solutions"] == 0 for r in reps)
    verdict("AC3 no norm-1 roots of d^(q^2+1) - d + 1, q in {3,5}", ok, time.perf_counter() - t0, 1)


def test_ac4_u1_not_extendable(verdict):
    t0 = time.perf_counter()
    U, res = u1_extension()
    ok = res.maximal and res.candidates == 728
    verdict("AC4 all 728 coset extensions of U_1 fail (q=3)", ok, time.perf_counter() - t0, 10)


def test_ac5_sporadic_example(verdict):
    t0 = time.perf_counter()
    U = sporadic_system()
    scat = is_h_scattered(U, 2)
    d, _ = min_weight_codeword(from_system(U))
    ext = extendability_search(U, 2)
    ok = (
        U.n == 6
        and scat.ok
        and scat.checked == subspace_count(U.tower, 3, 2) == 16513
        and d == 4
        and ext.maximal
        and ext.candidates <= 2**15
    )
    verdict("AC5 binary example: dim 6, 2-scattered, [6,3,4] MRD, not extendable", ok, time.perf_counter() - t0, 600)


def test_ac6_self_duality(verdict):
    t0 = time.perf_counter()
    ok = True
    for F in (F3, F5):
        deltas = list(norm_one_iter(F))
        rng = random.Random(F.q)
        chosen = [1] + rng.sample(deltas[1:], 4)
        for d in chosen:
            cert = selfdual_witness(F, d)
            ok = ok and not cert.failures()
            ok = ok and F.in_subfield(cert.s) and cert.s != 0
            ok = ok and cert.A.level == BASE and mat_mul(cert.G, cert.A) == cert.H
    verdict("AC6 self-duality certificates, 5 deltas each at q in {3,5}", ok, time.perf_counter() - t0, 5)


def test_ac7_oracle_equivalences(verdict):
    t0 = time.perf_counter()
    rng = random.Random(0)
    rank_bad = 0
    for _ in range(500):
        c = tuple(rng.randrange(243) if rng.random() < 0.5 else 0 for _ in range(5))
        L = LinPoly(F3, c)
        if lp_rank(L) != 5 - round(math.log(kernel_size(F3, L), 3)):
            rank_bad += 1
    mrd_bad = 0
    fields = {(q, m): tower_build(q, 1, m) for q in (2, 3) for m in (4, 5)}
    for i in range(200):
        (q, m), F = list(fields.items())[i % 4]
        C = random_code(F, 2, rng.randint(2, m), rng)
        U = to_system(C)
        scattered = is_h_scattered(U, 1).ok
        if not (is_mrd(C) == scattered == (max_point_weight(F, U.elements()) <= 1)):
            mrd_bad += 1
    ok = rank_bad == 0 and mrd_bad == 0
    verdict("AC7 Dickson rank = kernel oracle (500); MRD iff scattered (200)", ok, time.perf_counter() - t0)


def test_ac8_bounds(verdict):
    t0 = time.perf_counter()
    ok = (
        bound_max_dim(2, 5, 1) == 5
        and bound_maximal_lower(2, 5, 1) == 4
        and bound_maximal_lower(3, 7, 2) == 5
        and bound_maximal_lower(2, 6, 1) == 4
    )
    U, res = u1_extension()
    S = sporadic_system()
    ok = ok and res.maximal and U.n >= bound_maximal_lower(2, 5, 1)
    ok = ok and S.n >= bound_maximal_lower(3, 7, 2)
    verdict("AC8 bound values; maximal verdicts respect the lower bound", ok, time.perf_counter() - t0)


def test_ac9_no_maximal_three_dim_systems(verdict):
    t0 = time.perf_counter()
    F = tower_build(2, 1, 4)
    total, scattered, maximal, _ = enumerate_scattered(F, 2, 3)
    ok = total == 97155 and scattered > 0 and maximal == 0
    verdict(f"AC9 q=2 m=4: {scattered} scattered [3,2] systems, {maximal} maximal", ok, time.perf_counter() - t0, 120)


def test_ac10_duality_and_puncturing(verdict):
    t0 = time.perf_counter()
    rep = check_code_algebra(100, seed=0)
    ok = rep.passed and rep.counters["failures"] == 0
    verdict("AC10 double dual, puncturing containment, Gabidulin puncturing (100)", ok, time.perf_counter() - t0)
