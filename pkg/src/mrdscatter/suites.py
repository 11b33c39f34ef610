"""Named bundles of checks run by ``mrdscatter verify``."""
from __future__ import annotations

import itertools

from mrdscatter import checks
from mrdscatter.codes import from_system
from mrdscatter.constructions import SporadicBinary, UDelta, build_family, criterion_crosscheck, incomp_scan
from mrdscatter.gfarith import norm_one_iter, tower_build

SELFDUAL_DELTAS = 5


def _deltas(F, count=SELFDUAL_DELTAS):
    return list(itertools.islice(norm_one_iter(F), count))


def field_q3(seed=0):
    F = tower_build(3, 1, 5)
    U = build_family(UDelta(1), F)
    yield criterion_crosscheck(F)
    yield incomp_scan(F)
    yield checks.check_mrd(from_system(U), name="u1 mrd q=3")
    yield checks.check_maximal(U, 1, name="u1 maximally scattered q=3")
    yield checks.check_selfdual(F, _deltas(F))


def field_q5(seed=0):
    F = tower_build(5, 1, 5)
    yield criterion_crosscheck(F)
    yield incomp_scan(F)
    yield checks.check_selfdual(F, _deltas(F))


def sporadic(seed=0):
    F = tower_build(2, 1, 7)
    U = build_family(SporadicBinary(), F)
    yield checks.check_scattered(U, 2)
    yield checks.check_mrd(from_system(U), name="sporadic mrd")
    yield checks.check_maximal(U, 2, name="sporadic maximally 2-scattered")


def bounds(seed=0):
    yield checks.check_bounds()


def duality(seed=0):
    for q in (3, 5):
        F = tower_build(q, 1, 5)
        yield checks.check_selfdual(F, _deltas(F))
    yield checks.check_code_algebra(100, seed)


SUITES = {
    "paper-q3": field_q3,
    "paper-q5": field_q5,
    "sporadic": sporadic,
    "bounds": bounds,
    "duality": duality,
}


def run_suite(name, seed=0):
    if name == "all":
        for sub in SUITES.values():
            yield from sub(seed)
        return
    yield from SUITES[name](seed)
