"""Experiment driver: seeded replications, persisted results, statistics and plot data.

Command line::

    python -m areamo run --alg area --problem DTLZ2 --objectives 3 --runs 30 --out results
    python -m areamo stats results/area_DTLZ2_3d/metrics.json results/moead_DTLZ2_3d/metrics.json
    python -m areamo export results/area_DTLZ2_3d --out plots

Exit codes: 0 success, 2 configuration error, 3 mean IGD outside the
acceptance band (``run --check`` only).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats as sps

from .area import AreaConfig, RunResult, run_area
from .core import ConfigurationError, UsageError
from .metrics import hv_with_error, igd, nadir_plus, spacing
from .moead_baseline import MoeadConfig, run_moead
from .problems import DataError, make_problem, pf_sample, read_front, write_front
from .variation import OperatorParams

SCHEMA_VERSION = 1
ALPHA = 0.05
ALGORITHMS = ("area", "moead")

# (algorithm, problem, M) -> (low, high) band on the mean IGD over 30 runs
ACCEPTANCE_BANDS = {
    ("area", "DTLZ2", 3): (0.042, 0.066),
    ("area", "DTLZ5", 3): (0.0, 1.0e-2),
    ("area", "DTLZ7", 3): (0.0, 0.12),
    ("area", "F1", 2): (0.0, 1.0e-2),
    ("area", "MOP1", 2): (0.0, 5e-2),
    ("moead", "DTLZ2", 3): (0.045, 0.060),
    ("moead", "MOP1", 2): (0.2, math.inf),
}

log = logging.getLogger(__name__)


def default_population(problem: str, M: int) -> int:
    if problem.upper().startswith("UF"):
        return 600 if M == 2 else 595
    return {2: 100, 3: 105, 8: 156, 15: 135}.get(M, 100)


def default_budget(problem: str, N: int) -> int:
    key = problem.upper()
    if key in ("MOP1", "MOP2", "MOP3", "MOP4", "MOP5"):
        return 200_000
    if key in ("MOP6", "MOP7") or key.startswith("UF"):
        return 300_000
    if key.startswith("WFG"):
        return 1000 * N
    return 20_000


def default_operator(problem: str) -> str:
    key = problem.upper()
    return "de" if key.startswith("MOP") or key.startswith("UF") else "sbx"


@dataclass
class ExperimentSpec:
    """One algorithm on one problem, replicated ``runs`` times with seeds ``seed + k``.

    ``None`` fields are filled from the per-problem defaults by :meth:`resolved`.
    """

    algorithm: str
    problem: str
    M: int | None = None
    N: int | None = None
    max_fe: int | None = None
    runs: int = 30
    seed: int = 0
    operator: str | None = None
    T: int = 20
    f_r: float = 0.05
    archive_factor: float = 1.5
    replacement: str = "single"
    schedule: str = "alternate"
    out: str | None = None

    def resolved(self) -> "ExperimentSpec":
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm {self.algorithm!r}")
        if self.runs < 1:
            raise ConfigurationError("runs must be at least 1")
        p = make_problem(self.problem, self.M)
        N = self.N or default_population(p.name, p.M)
        return ExperimentSpec(
            algorithm=self.algorithm,
            problem=p.name,
            M=p.M,
            N=N,
            max_fe=self.max_fe or default_budget(p.name, N),
            runs=self.runs,
            seed=self.seed,
            operator=self.operator or default_operator(p.name),
            T=self.T,
            f_r=self.f_r,
            archive_factor=self.archive_factor,
            replacement=self.replacement,
            schedule=self.schedule,
            out=self.out,
        )

    @property
    def tag(self) -> str:
        return f"{self.algorithm}_{self.problem}_{self.M}d"


def single_run(spec: ExperimentSpec, k: int, reference_front=None) -> RunResult:
    """Replication ``k`` of a resolved spec (seed ``spec.seed + k``)."""
    p = make_problem(spec.problem, spec.M)
    op = OperatorParams(kind=spec.operator)
    seed = spec.seed + k
    if spec.algorithm == "area":
        cfg = AreaConfig(
            p,
            spec.N,
            T=spec.T,
            max_fe=spec.max_fe,
            f_r=spec.f_r,
            archive_factor=spec.archive_factor,
            operator=op,
            seed=seed,
            replacement=spec.replacement,
            schedule=spec.schedule,
            reference_front=reference_front,
        )
        return run_area(cfg)
    cfg = MoeadConfig(p, spec.N, T=spec.T, max_fe=spec.max_fe, operator=op, seed=seed, reference_front=reference_front)
    return run_moead(cfg)


def run_metrics(front: np.ndarray, pf: np.ndarray) -> dict:
    value, err = hv_with_error(front, nadir_plus(pf))
    return {
        "igd": igd(front, pf),
        "hv": value,
        "hv_stderr": err,
        "spacing": spacing(front) if len(front) > 1 else 0.0,
    }


def summarise(values) -> dict:
    v = np.asarray(values, dtype=float)
    return {
        "mean": float(v.mean()),
        "std": float(v.std(ddof=1)) if len(v) > 1 else 0.0,
        "sem": sem(v) if len(v) > 1 else 0.0,
    }


def run_experiment(spec: ExperimentSpec, trajectories: bool = True) -> dict:
    """Execute all replications and, when ``spec.out`` is set, persist them.

    Writes ``<out>/<alg>_<problem>_<M>d/`` holding ``run_<k>.pf`` (the
    assessed front of each run) and ``metrics.json`` (spec, per-run seeds,
    metrics and IGD trajectories, and the aggregate). Returns the JSON
    document.
    """
    spec = spec.resolved()
    pf = pf_sample(make_problem(spec.problem, spec.M))
    target = None
    if spec.out is not None:
        target = Path(spec.out) / spec.tag
        target.mkdir(parents=True, exist_ok=True)

    runs = []
    for k in range(spec.runs):
        res = single_run(spec, k, pf if trajectories else None)
        row = {"run": k, "seed": spec.seed + k, "fe_used": res.fe_used, "generations": res.generations}
        row.update(run_metrics(res.archive, pf))
        row["trajectory"] = [[int(fe), float(v)] for fe, v in res.igd_trajectory]
        runs.append(row)
        log.info("%s run %d seed %d igd %.6e (%.1fs)", spec.tag, k, spec.seed + k, row["igd"], res.wall_time)
        if target is not None:
            write_front(target / f"run_{k}.pf", res.archive)

    doc = {
        "schema_version": SCHEMA_VERSION,
        "spec": asdict(spec),
        "runs": runs,
        "aggregate": {m: summarise([r[m] for r in runs]) for m in ("igd", "hv", "spacing")},
    }
    if target is not None:
        (target / "metrics.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return doc


def load_metrics(path) -> dict:
    path = Path(path)
    if path.is_dir():
        path = path / "metrics.json"
    doc = json.loads(path.read_text())
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ConfigurationError(f"{path}: unsupported schema version {doc.get('schema_version')}")
    return doc


def sem(values) -> float:
    """Standard error of the mean with the ``n - 1`` standard deviation."""
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        raise UsageError("SEM needs at least two values")
    return float(v.std(ddof=1) / math.sqrt(v.size))


def rank_sum_test(xs, ys, alpha: float = ALPHA, lower_is_better: bool = True) -> tuple[float, str]:
    """Two-sided Wilcoxon rank-sum (Mann-Whitney U) test.

    Small samples without ties use the exact null distribution; otherwise
    the normal approximation with tie correction is used. The verdict is
    ``"+"`` when ``xs`` is significantly better than ``ys``, ``"-"`` when
    significantly worse and ``"≈"`` otherwise.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2 or y.size < 2:
        raise UsageError("rank-sum test needs at least two values per sample")
    if np.all(np.concatenate([x, y]) == x[0]):
        return 1.0, "≈"
    res = sps.mannwhitneyu(x, y, alternative="two-sided", method="auto")
    p = float(min(1.0, res.pvalue))
    if p >= alpha:
        return p, "≈"
    # U counts pairs with x > y; below half means xs tend to be smaller
    x_smaller = res.statistic < 0.5 * x.size * y.size
    return p, "+" if x_smaller == lower_is_better else "-"


@dataclass
class StatsReport:
    metrics: dict = field(default_factory=dict)  # name -> {"a": summary, "b": summary, "p": p, "verdict": v}

    def lines(self, name_a: str, name_b: str) -> list[str]:
        out = [f"metric  {name_a:>24}  {name_b:>24}  p-value  verdict"]
        for m, row in self.metrics.items():
            a, b = row["a"], row["b"]
            out.append(
                f"{m:<7} {a['mean']:.4e} ({a['std']:.2e})  {b['mean']:.4e} ({b['std']:.2e})  "
                f"{row['p']:.3g}  {row['verdict']}"
            )
        return out


def compare(doc_a: dict, doc_b: dict) -> StatsReport:
    """Rank-sum comparison of two experiments; verdicts are from ``a``'s side."""
    report = StatsReport()
    for m, lower in (("igd", True), ("hv", False), ("spacing", True)):
        xs = [r[m] for r in doc_a["runs"]]
        ys = [r[m] for r in doc_b["runs"]]
        if len(xs) < 2 or len(ys) < 2:
            p, v = math.nan, "≈"
        else:
            p, v = rank_sum_test(xs, ys, lower_is_better=lower)
        report.metrics[m] = {"a": summarise(xs), "b": summarise(ys), "p": p, "verdict": v}
    return report


def export_plot_data(result_dir, out_dir) -> list[Path]:
    """Plot-ready text files from a persisted experiment.

    Writes ``front_<k>.dat`` (one objective vector per row),
    ``trajectory.dat`` (evaluation count and mean IGD over runs) and, for
    more than three objectives, ``parallel_<k>.dat`` with every objective
    scaled to [0, 1] by the true front's extent.
    """
    result_dir = Path(result_dir)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    doc = load_metrics(result_dir)
    spec = doc["spec"]
    written = []
    pf = None
    for row in doc["runs"]:
        k = row["run"]
        F = read_front(result_dir / f"run_{k}.pf")
        path = out_dir / f"front_{k}.dat"
        write_front(path, F)
        written.append(path)
        if F.shape[1] > 3:
            if pf is None:
                pf = pf_sample(make_problem(spec["problem"], spec["M"]))
            lo, hi = pf.min(axis=0), pf.max(axis=0)
            span = np.where(hi - lo > 0, hi - lo, 1.0)
            path = out_dir / f"parallel_{k}.dat"
            header = " ".join(f"f{j + 1}" for j in range(F.shape[1]))
            np.savetxt(path, (F - lo) / span, fmt="%.6f", header=header, comments="# ")
            written.append(path)

    trajs = [r["trajectory"] for r in doc["runs"] if r["trajectory"]]
    if trajs:
        length = min(len(t) for t in trajs)
        fe = np.array([t[i][0] for t in trajs[:1] for i in range(length)])
        mean = np.mean([[t[i][1] for i in range(length)] for t in trajs], axis=0)
        path = out_dir / "trajectory.dat"
        np.savetxt(path, np.column_stack([fe, mean]), fmt=["%d", "%.10e"], header="fe mean_igd", comments="# ")
        written.append(path)
    return written


def check_band(doc: dict) -> tuple[bool, str]:
    spec = doc["spec"]
    key = (spec["algorithm"], spec["problem"], spec["M"])
    if key not in ACCEPTANCE_BANDS:
        return True, f"no acceptance band for {key}"
    lo, hi = ACCEPTANCE_BANDS[key]
    mean = doc["aggregate"]["igd"]["mean"]
    ok = lo <= mean <= hi
    return ok, f"{'PASS' if ok else 'FAIL'} {spec['algorithm']}/{spec['problem']}: mean IGD {mean:.4e} in [{lo}, {hi}]"


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="areamo", description="AREA and MOEA/D benchmark experiments")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replicate one algorithm on one problem")
    run.add_argument("--alg", choices=ALGORITHMS, default="area")
    run.add_argument("--problem", required=True)
    run.add_argument("--objectives", type=int, default=None, help="number of objectives M")
    run.add_argument("--pop", type=int, default=None, help="population size N")
    run.add_argument("--fe", type=int, default=None, help="evaluation budget")
    run.add_argument("--runs", type=int, default=30)
    run.add_argument("--seed", type=int, default=0, help="base seed; run k uses seed+k")
    run.add_argument("--fr", type=float, default=0.05, help="reference mode switch interval (fraction of budget)")
    run.add_argument("--archive-factor", type=float, default=1.5)
    run.add_argument("--operator", choices=("sbx", "de"), default=None)
    run.add_argument("--replacement", choices=("subproblem", "neighbourhood", "single"), default="single")
    run.add_argument("--schedule", choices=("alternate", "fixed", "evolving"), default="alternate")
    run.add_argument("--out", default="results")
    run.add_argument("--no-trajectory", action="store_true", help="skip the per-100-FE IGD log")
    run.add_argument("--check", action="store_true", help="exit 3 if the mean IGD misses its acceptance band")

    st = sub.add_parser("stats", help="rank-sum comparison of two experiments")
    st.add_argument("a")
    st.add_argument("b")

    ex = sub.add_parser("export", help="write plot-ready data for an experiment")
    ex.add_argument("result_dir")
    ex.add_argument("--out", required=True)

    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "run":
            spec = ExperimentSpec(
                algorithm=args.alg,
                problem=args.problem,
                M=args.objectives,
                N=args.pop,
                max_fe=args.fe,
                runs=args.runs,
                seed=args.seed,
                operator=args.operator,
                f_r=args.fr,
                archive_factor=args.archive_factor,
                replacement=args.replacement,
                schedule=args.schedule,
                out=args.out,
            )
            doc = run_experiment(spec, trajectories=not args.no_trajectory)
            agg = doc["aggregate"]
            print(
                f"{doc['spec']['algorithm']} {doc['spec']['problem']} M={doc['spec']['M']}: "
                f"IGD {agg['igd']['mean']:.4e} ({agg['igd']['std']:.2e}), "
                f"HV {agg['hv']['mean']:.4e}, S {agg['spacing']['mean']:.4e}"
            )
            if args.check:
                ok, msg = check_band(doc)
                print(msg)
                if not ok:
                    return 3
        elif args.command == "stats":
            a, b = load_metrics(args.a), load_metrics(args.b)
            report = compare(a, b)
            for line in report.lines(_label(a), _label(b)):
                print(line)
        else:
            for path in export_plot_data(args.result_dir, args.out):
                print(path)
    except (ConfigurationError, UsageError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    return 0


def _label(doc: dict) -> str:
    s = doc["spec"]
    return f"{s['algorithm']}/{s['problem']}"
