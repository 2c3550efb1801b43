"""Write the bundled reference-front files for problems without an analytic sampler.

Usage:
    python scripts/generate_fronts.py [--out DIR] [--count 1000] [--only MOP1 F5 ...]
"""

import argparse
from pathlib import Path

from areamo.problems import DATA_DIR, PROBLEM_NAMES, _WFG_M, construct_front, make_problem, write_front


def targets(only):
    names = only or PROBLEM_NAMES
    for name in names:
        if name.startswith("WFG"):
            dims = _WFG_M
        elif name in ("F5", "F6", "F7", "F8"):
            dims = (3,)
        else:
            dims = (None,)
        for M in dims:
            p = make_problem(name, M)
            if p.pf_source != "analytic":
                yield p


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA_DIR)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--only", nargs="*")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for p in targets(args.only):
        F = construct_front(p.name, p.M, args.count)
        write_front(args.out / p.pf_source, F)
        print(f"{p.pf_source}: {len(F)} points")


if __name__ == "__main__":
    main()
