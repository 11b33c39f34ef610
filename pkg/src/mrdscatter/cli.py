"""Command line: construct objects, run checks, verification suites and searches.

Exit codes: 0 pass, 1 a check failed, 2 usage or input error, 3 budget exceeded.
Human-readable summaries go to stdout; JSON goes to ``--out`` when given.
"""
from __future__ import annotations

import argparse
import json
import sys

from mrdscatter import checks
from mrdscatter.codes import RankCode, from_system, to_system
from mrdscatter.errors import (
    BudgetExceeded,
    CertificateInvalid,
    DescriptorError,
    MRDScatterError,
    VerificationFailure,
    WitnessNotFound,
)
from mrdscatter.gfarith import tower_build
from mrdscatter.io import construct, dumps, load_object, object_to_dict, parse_element, parse_field, read_json
from mrdscatter.report import FAIL, PASS, SKIPPED, VerificationReport, run_check
from mrdscatter.suites import SUITES, run_suite
from mrdscatter.systems import QSystem, enumerate_scattered, extendability_search

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
CHECK_KINDS = ("scattered", "evasive", "mrd", "maximal", "dual", "selfdual")


class UsageError(Exception):
    pass


def _common():
    # defaults are suppressed so flags work before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--field-file", default=S, help="JSON field descriptor for files without one")
    p.add_argument("--budget", type=int, default=S, help="override the enumeration budget")
    p.add_argument("--threads", type=int, default=S, help="worker threads for searches")
    p.add_argument("--seed", type=int, default=S, help="seed for randomized checks")
    p.add_argument("--out", default=S, help="write JSON output here")
    p.add_argument("--timing", action="store_true", default=S, help="include elapsed_ms in JSON reports")
    return p


def build_parser():
    common = _common()
    ap = argparse.ArgumentParser(prog="mrdscatter", description=__doc__.splitlines()[0], parents=[common])
    ap.set_defaults(field_file=None, budget=None, threads=1, seed=0, out=None, timing=False)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a family member from a descriptor")
    c.add_argument("descriptor")

    k = sub.add_parser("check", parents=[common], help="run one check on an object file")
    k.add_argument("kind", choices=CHECK_KINDS)
    k.add_argument("object")
    k.add_argument("--h", type=int, help="subspace dimension (scattered: 1, maximal: k-1)")
    k.add_argument("--r", type=int, help="weight bound for evasive")
    k.add_argument("--delta", help="JSON element; defaults to the delta in the file's meta")

    v = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    v.add_argument("suite", choices=[*SUITES, "all"])

    s = sub.add_parser("search", parents=[common], help="bounded searches")
    s.add_argument("mode", choices=("extend", "enumerate-scattered"))
    s.add_argument("object", nargs="?", help="q-system file (extend)")
    s.add_argument("--h", type=int, default=None)
    s.add_argument("--q", type=int, help="prime q (enumerate-scattered)")
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--findings", help="write the extended system or maximal examples here")
    return ap


def _budget(args, key="budget"):
    return {} if args.budget is None else {key: args.budget}


def _field_override(args):
    return None if args.field_file is None else parse_field(read_json(args.field_file))


def _load(args):
    return load_object(args.object, _field_override(args))


def _as_system(obj):
    return to_system(obj) if isinstance(obj, RankCode) else obj


def _as_code(obj):
    return from_system(obj) if isinstance(obj, QSystem) else obj


def _emit(args, reports, extra=None):
    for r in reports:
        print(r.summary())
    if args.out:
        payload = [r.to_dict(timing=args.timing) for r in reports]
        body = payload[0] if len(payload) == 1 and extra is None else {"reports": payload, **(extra or {})}
        with open(args.out, "w") as fh:
            fh.write(dumps(body))
    return EXIT_PASS if all(r.status == PASS for r in reports) else EXIT_FAIL


def _selfdual_delta(args, U):
    F = U.tower
    if args.delta is not None:
        return parse_element(F, json.loads(args.delta))
    meta = read_json(args.object).get("meta", {})
    params = meta.get("params", {}) if meta.get("family") == "u-delta" else {}
    if "delta" not in params:
        raise UsageError("selfdual needs --delta or a u-delta object file")
    return parse_element(F, params["delta"])


def cmd_construct(args):
    obj, meta = construct(read_json(args.descriptor), _field_override(args))
    text = dumps(object_to_dict(obj, meta))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        kind = "qsystem" if isinstance(obj, QSystem) else "code"
        print(f"wrote {kind} ({obj.n} basis vectors) to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_check(args):
    obj = _load(args)
    kind = args.kind
    if kind == "scattered":
        rep = checks.check_scattered(_as_system(obj), args.h or 1, **_budget(args))
    elif kind == "evasive":
        if args.h is None or args.r is None:
            raise UsageError("evasive needs --h and --r")
        rep = checks.check_evasive(_as_system(obj), args.h, args.r, **_budget(args))
    elif kind == "mrd":
        rep = checks.check_mrd(_as_code(obj), **_budget(args))
    elif kind == "maximal":
        U = _as_system(obj)
        h = U.k - 1 if args.h is None else args.h
        rep = checks.check_maximal(U, h, workers=args.threads, **_budget(args))
    elif kind == "dual":
        rep = checks.check_dual(_as_code(obj))
    else:
        U = _as_system(obj)
        delta = _selfdual_delta(args, U)
        rep = checks.check_selfdual(U.tower, [delta], x_basis=[v[0] for v in U.basis])
    return _emit(args, [rep])


def cmd_verify(args):
    return _emit(args, list(run_suite(args.suite, seed=args.seed)), {"suite": args.suite, "seed": args.seed})


def cmd_search(args):
    if args.mode == "extend":
        if args.object is None:
            raise UsageError("extend needs a q-system file")
        U = _as_system(_load(args))
        h = U.k - 1 if args.h is None else args.h

        def body():
            res = extendability_search(U, h, workers=args.threads, **_budget(args))
            counters = {"n": U.n, "candidates": res.candidates, "tested": res.tested}
            found = None if res.maximal else [U.tower.coords(a) for a in res.witness]
            return PASS, found and {"extension": found}, counters, {"method": res.method, "maximal": res.maximal}

        rep = run_check(f"extend h={h}", body)
        if args.findings and rep.witness:
            ext = U.extended(tuple(U.tower.elem(a) for a in rep.witness["extension"]))
            with open(args.findings, "w") as fh:
                fh.write(dumps(object_to_dict(ext, {"extended_from": args.object, "h": h})))
        return _emit(args, [rep])

    if None in (args.q, args.m, args.k, args.n):
        raise UsageError("enumerate-scattered needs --q, --m, --k and --n")
    F = tower_build(args.q, 1, args.m)
    h = 1 if args.h is None else args.h
    examples = []

    def body():
        total, scattered, maximal, ex = enumerate_scattered(F, args.k, args.n, h, **_budget(args))
        examples.extend(ex)
        counters = {"subspaces": total, "scattered": scattered, "maximal": maximal, "extendable": scattered - maximal}
        return PASS, None, counters, {"q": args.q, "m": args.m, "k": args.k, "n": args.n, "h": h}

    rep = run_check(f"enumerate-scattered q={args.q} m={args.m} k={args.k} n={args.n}", body)
    if args.findings:
        with open(args.findings, "w") as fh:
            fh.write(dumps({"maximal_examples": [object_to_dict(U) for U in examples]}))
    return _emit(args, [rep])


COMMANDS = {"construct": cmd_construct, "check": cmd_check, "verify": cmd_verify, "search": cmd_search}


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        rep = VerificationReport(args.command, SKIPPED, None, {}, details={"reason": str(exc)})
        if args.out and args.command != "construct":
            with open(args.out, "w") as fh:
                fh.write(dumps(rep.to_dict(timing=args.timing)))
        return EXIT_BUDGET
    except (VerificationFailure, CertificateInvalid, WitnessNotFound) as exc:
        print(f"{FAIL}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, DescriptorError, MRDScatterError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
