"""Sweep the reference-mode switch interval f_r on one problem.

Usage:
    python scripts/sensitivity_fr.py --problem DTLZ5 --values 0.01 0.05 0.1 0.2 0.5 --runs 30

Prints mean and standard deviation of IGD per value, plus the rank-sum
verdict of each value against the first one (``+`` means the first value
is significantly better).
"""

import argparse

import numpy as np

from areamo.harness import ExperimentSpec, rank_sum_test, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--problem", default="DTLZ5")
    ap.add_argument("--objectives", type=int, default=None)
    ap.add_argument("--values", type=float, nargs="+", default=[0.05, 0.1, 0.2, 0.5])
    ap.add_argument("--runs", type=int, default=30)
    ap.add_argument("--fe", type=int, default=None)
    args = ap.parse_args()

    results = {}
    for f_r in args.values:
        spec = ExperimentSpec("area", args.problem, M=args.objectives, runs=args.runs, max_fe=args.fe, f_r=f_r)
        results[f_r] = [r["igd"] for r in run_experiment(spec, trajectories=False)["runs"]]

    base = args.values[0]
    print(f"{'f_r':>6}  {'mean IGD':>11}  {'std':>9}  vs {base}")
    for f_r, v in results.items():
        verdict = "" if f_r == base else "%s (p=%.3g)" % rank_sum_test(results[base], v)[::-1]
        print(f"{f_r:>6}  {np.mean(v):.5e}  {np.std(v, ddof=1):.2e}  {verdict}")


if __name__ == "__main__":
    main()
