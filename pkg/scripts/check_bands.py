"""Replicate the acceptance-band configurations and report each mean IGD.

Usage:
    python scripts/check_bands.py [--runs 30] [--only area:DTLZ2 moead:MOP1] [--out results]

Each entry runs through the harness exactly as ``areamo run`` would, so the
persisted results can be fed to ``areamo stats`` or ``areamo export``.
"""

import argparse
import logging

from areamo.harness import ACCEPTANCE_BANDS, ExperimentSpec, check_band, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--runs", type=int, default=30)
    ap.add_argument("--only", nargs="*", help="entries as alg:PROBLEM")
    ap.add_argument("--out", default=None, help="persist results under this directory")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    failures = 0
    for alg, problem, M in ACCEPTANCE_BANDS:
        if args.only and f"{alg}:{problem}" not in args.only:
            continue
        spec = ExperimentSpec(alg, problem, M=M, runs=args.runs, out=args.out)
        ok, msg = check_band(run_experiment(spec, trajectories=False))
        failures += not ok
        print(msg, flush=True)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
