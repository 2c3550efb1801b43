"""MOEA/D with Tchebycheff aggregation, used as the comparison baseline.

This is the original steady-state loop: parents come from the neighbourhood
of the current subproblem and an offspring replaces every neighbour whose
aggregation value it does not worsen. There is no external archive; the
final population is what gets assessed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .area import TRAJECTORY_STEP, RunResult
from .core import ConfigurationError
from .metrics import igd
from .problems import ProblemSpec
from .reference import build_neighbourhood, weight_design
from .variation import OperatorParams, de_offspring, draw_from, polynomial_mutation, sbx_crossover

ZERO_WEIGHT = 1e-6


@dataclass
class MoeadConfig:
    problem: ProblemSpec
    N: int
    T: int = 20
    max_fe: int = 20000
    operator: OperatorParams = field(default_factory=OperatorParams)
    seed: int = 0
    # "inverse": max |f - z| / w (default); "weighted": max w |f - z|
    aggregation: str = "inverse"
    reference_front: np.ndarray | None = field(default=None, repr=False)

    def validate(self) -> None:
        if self.N < max(self.problem.M, 2):
            raise ConfigurationError(f"population size {self.N} is too small")
        if self.T < 2:
            raise ConfigurationError("neighbourhood must hold at least two subproblems")
        if self.max_fe < 2 * self.N:
            raise ConfigurationError(
                f"budget {self.max_fe} does not cover initialisation plus one generation ({2 * self.N})"
            )
        if self.aggregation not in ("inverse", "weighted"):
            raise ConfigurationError(f"unknown aggregation {self.aggregation!r}")


def tchebycheff(F: np.ndarray, W: np.ndarray, z: np.ndarray, aggregation: str = "inverse") -> np.ndarray:
    """Tchebycheff value of each row of ``F`` under the matching weight row.

    ``"inverse"`` computes ``max_j |f_j - z_j| / w_j``, whose optimum on the
    front lies along the ray ``z + t w``; ``"weighted"`` is the textbook
    ``max_j w_j |f_j - z_j|``. Zero weights count as 1e-6 in both.
    """
    return np.max(_scales(W, aggregation) * np.abs(F - z), axis=-1)


def _scales(W: np.ndarray, aggregation: str) -> np.ndarray:
    W = np.where(W == 0, ZERO_WEIGHT, W)
    return 1.0 / W if aggregation == "inverse" else W


def run_moead(cfg: MoeadConfig) -> RunResult:
    """Run the baseline once; deterministic for a fixed seed."""
    cfg.validate()
    start = time.perf_counter()
    p = cfg.problem
    N = cfg.N
    rng = np.random.default_rng(cfg.seed)
    params = cfg.operator
    lower, upper = p.lower, p.upper

    W = weight_design(p.M, N)
    scale = _scales(W, cfg.aggregation)
    B = build_neighbourhood(W, cfg.T)
    X = p.random_solutions(N, rng)
    F = p.func(X)
    z = F.min(axis=0)
    fe = N

    pf = cfg.reference_front
    trajectory: list[tuple[int, float]] = []
    next_mark = 0
    if pf is not None:
        trajectory.append((fe, igd(F, pf)))
        next_mark = (fe // TRAJECTORY_STEP + 1) * TRAJECTORY_STEP

    gen = 0
    while fe < cfg.max_fe:
        for i in range(N):
            nb = B[i]
            if params.kind == "de":
                a = draw_from(nb, N, (i,), rng)
                b = draw_from(nb, N, (i, a), rng)
                child = de_offspring(X[i], X[a], X[b], params, lower, upper, rng)
            else:
                k = draw_from(nb, N, (), rng)
                l = draw_from(nb, N, (k,), rng)
                child = sbx_crossover(X[k], X[l], params, lower, upper, rng)
            y = polynomial_mutation(child, params, lower, upper, rng)
            fy = p.func(y[None, :])[0]
            fe += 1
            np.minimum(z, fy, out=z)
            new = np.max(scale[nb] * np.abs(fy - z), axis=1)
            old = np.max(scale[nb] * np.abs(F[nb] - z), axis=1)
            hit = nb[new <= old]
            X[hit] = y
            F[hit] = fy
        gen += 1
        if pf is not None and fe >= next_mark:
            trajectory.append((fe, igd(F, pf)))
            next_mark = (fe // TRAJECTORY_STEP + 1) * TRAJECTORY_STEP

    return RunResult(
        X=X,
        F=F,
        archive=F.copy(),
        archive_X=X.copy(),
        igd_trajectory=trajectory,
        fe_used=fe,
        generations=gen,
        wall_time=time.perf_counter() - start,
        seed=cfg.seed,
    )
