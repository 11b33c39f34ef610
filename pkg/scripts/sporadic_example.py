"""The 6-dimensional 2-scattered binary system in F_{2^7}^3, checked end to end."""
import argparse
import sys
import time

from mrdscatter.codes import from_system, min_weight_codeword
from mrdscatter.constructions import SporadicBinary, build_family
from mrdscatter.gfarith import tower_build
from mrdscatter.io import object_to_dict, write_json
from mrdscatter.systems import extendability_search, is_h_scattered


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--save", help="write the q-system JSON here")
    args = ap.parse_args()

    F = tower_build(2, 1, 7)
    U = build_family(SporadicBinary(), F)
    print(f"field F_2^7, modulus {F.ext_modulus}, xi = {F.primitive_elem}; dim U = {U.n}")

    t0 = time.perf_counter()
    v = is_h_scattered(U, 2)
    print(f"2-scattered: {v.ok} ({v.checked} hyperplanes, {time.perf_counter() - t0:.2f} s)")

    t0 = time.perf_counter()
    C = from_system(U)
    d, _ = min_weight_codeword(C)
    print(f"code [{C.n},{C.k},{d}], MRD: {d == C.n - C.k + 1} ({time.perf_counter() - t0:.2f} s)")

    t0 = time.perf_counter()
    res = extendability_search(U, 2, workers=args.threads)
    print(f"extension: {'none' if res.maximal else res.witness} "
          f"({res.candidates} candidates, {res.tested} tested, {time.perf_counter() - t0:.1f} s)")

    if args.save:
        write_json(object_to_dict(U, {"family": "sporadic", "params": {}}), args.save)
    return 0 if v.ok and d == 4 and res.maximal else 1


if __name__ == "__main__":
    sys.exit(main())
