"""Run one or more verification suites and write one JSON report per suite."""
import argparse
import sys
from pathlib import Path

from mrdscatter.io import dumps
from mrdscatter.suites import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("suites", nargs="*", default=list(SUITES), help=f"any of {', '.join(SUITES)}")
    ap.add_argument("--outdir", default="reports")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--timing", action="store_true", help="keep elapsed_ms in the JSON")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in args.suites:
        reports = []
        for rep in run_suite(name, seed=args.seed):
            print(rep.summary())
            reports.append(rep)
        failed += sum(not r.passed for r in reports)
        body = {"suite": name, "seed": args.seed, "reports": [r.to_dict(timing=args.timing) for r in reports]}
        (outdir / f"{name}.json").write_text(dumps(body))
    print(f"{failed} failing checks; reports in {outdir}/")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
