"""The AREA main loop.

The population is kept aligned with the current reference set: row ``i`` of
``X``/``F`` targets reference ``i``. Generations alternate between two
reference modes on a fixed evaluation schedule:

* fixed: the initial lattice ``R0`` and its neighbourhoods are used; on
  entering this mode the population is re-matched to ``R0`` from population
  plus archive;
* evolving: every generation the reference set is grown from the archive and
  pruned back (see :func:`areamo.reference.update_reference_set`). Each
  evolving phase resumes from the reference set the previous one ended with.

Offspring are produced and inserted one at a time (steady state), and the
archive and upper normalisation point are refreshed once per generation.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .archive import Archive, assess_indices, update_archive
from .core import ConfigurationError, IdealPoints, nondominated_filter, normalize
from .metrics import igd
from .problems import ProblemSpec
from .reference import (
    ConsistencyError,
    ReferenceSet,
    initial_reference_set,
    match_population,
    update_reference_set,
)
from .variation import (
    OperatorParams,
    de_offspring,
    draw_from,
    local_mating_probabilities,
    polynomial_mutation,
    sbx_crossover,
    select_mate,
)

log = logging.getLogger(__name__)

REPLACEMENT_MODES = ("neighbourhood", "subproblem", "single")
SCHEDULES = ("alternate", "fixed", "evolving")
UPPER_POINTS = ("population", "merged", "archive")
TRAJECTORY_STEP = 100


@dataclass
class AreaConfig:
    """Settings of one AREA run.

    Attributes:
        problem: the benchmark instance.
        N: population size, which is also the reference-set size.
        T: neighbourhood size.
        max_fe: evaluation budget; the last generation may overshoot it by
            fewer than ``N`` evaluations.
        f_r: mode-switch interval as a fraction of ``max_fe``. Values of one
            or more never leave the fixed mode.
        archive_factor: archive capacity in multiples of ``N``.
        K_rule: ``"sqrt"`` adds ``ceil(sqrt(N))`` references per update,
            ``"fraction"`` adds ``ceil(K_fraction * N)``.
        replacement: which incumbents an offspring competes with, see
            :func:`replace_in_neighbourhood`.
        schedule: ``"alternate"`` (default), or ``"fixed"``/``"evolving"`` to
            stay in one mode for the whole run.
        reference_front: true-front sample; when given, the run records an
            IGD trajectory.
        upper_point: where ``z_u`` comes from at the end of a generation:
            ``"population"`` (the updated population, default), ``"merged"``
            (population plus every offspring, rejected ones included) or
            ``"archive"``.
        evolve_every_generation: update the reference set in every evolving
            generation rather than only on entering the mode.
        resume_evolved: start each evolving phase from the last updated
            reference set (re-matching the population to it) instead of ``R0``.
        match_every_generation: re-match to ``R0`` in every fixed generation
            rather than only on entering the mode.
        check_invariants: verify structural invariants every generation.
    """

    problem: ProblemSpec
    N: int
    T: int = 20
    max_fe: int = 20000
    f_r: float = 0.05
    archive_factor: float = 1.5
    K_rule: str = "sqrt"
    K_fraction: float = 0.1
    operator: OperatorParams = field(default_factory=OperatorParams)
    seed: int = 0
    replacement: str = "single"
    schedule: str = "alternate"
    reference_front: np.ndarray | None = field(default=None, repr=False)
    upper_point: str = "population"
    evolve_every_generation: bool = True
    resume_evolved: bool = True
    match_every_generation: bool = False
    check_invariants: bool = False

    def validate(self) -> None:
        M = self.problem.M
        if self.N < max(M, 2):
            raise ConfigurationError(f"population size {self.N} is too small for M={M}")
        if self.T < 1:
            raise ConfigurationError("neighbourhood size must be positive")
        if self.max_fe < 2 * self.N:
            raise ConfigurationError(
                f"budget {self.max_fe} does not cover initialisation plus one generation ({2 * self.N})"
            )
        if self.f_r <= 0:
            raise ConfigurationError("f_r must be positive")
        if self.archive_factor < 1:
            raise ConfigurationError("archive capacity must be at least N")
        if self.K_rule not in ("sqrt", "fraction"):
            raise ConfigurationError(f"unknown K rule {self.K_rule!r}")
        if self.replacement not in REPLACEMENT_MODES:
            raise ConfigurationError(f"unknown replacement mode {self.replacement!r}")
        if self.schedule not in SCHEDULES:
            raise ConfigurationError(f"unknown schedule {self.schedule!r}")
        if self.upper_point not in UPPER_POINTS:
            raise ConfigurationError(f"unknown upper point source {self.upper_point!r}")

    @property
    def K(self) -> int:
        if self.K_rule == "sqrt":
            return math.ceil(math.sqrt(self.N))
        return max(1, math.ceil(self.K_fraction * self.N))

    @property
    def switch_interval(self) -> int:
        return max(1, math.ceil(self.f_r * self.max_fe))

    def mode_at(self, fe: int) -> str:
        """Reference mode for a generation starting after ``fe`` evaluations."""
        if self.schedule != "alternate":
            return self.schedule
        return "fixed" if (fe // self.switch_interval) % 2 == 0 else "evolving"


@dataclass
class RunResult:
    X: np.ndarray  # final population
    F: np.ndarray
    archive: np.ndarray  # archive objectives truncated to N
    archive_X: np.ndarray
    igd_trajectory: list[tuple[int, float]]
    fe_used: int
    generations: int
    wall_time: float
    seed: int

    @property
    def final_population(self) -> np.ndarray:
        return self.F

    @property
    def final_archive(self) -> np.ndarray:
        return self.archive


def replace_in_neighbourhood(
    x: np.ndarray,
    f: np.ndarray,
    refs: ReferenceSet,
    X: np.ndarray,
    F: np.ndarray,
    z: IdealPoints,
    mode: str = "single",
) -> int:
    """Let offspring ``(x, f)`` replace incumbents; ``X`` and ``F`` are edited in place.

    The offspring's target ``j`` is its Chebyshev-nearest reference. Then

    * ``"neighbourhood"``: every member of ``B(j)`` whose Chebyshev distance to
      ``r_j`` exceeds the offspring's is replaced;
    * ``"subproblem"``: each member ``s`` of ``B(j)`` is replaced when the
      offspring is Chebyshev-closer to ``r_s`` than ``x_s`` is;
    * ``"single"``: only ``x_j`` is considered.

    Distances use the normalisation in ``z`` at call time. Returns the
    number of incumbents replaced.
    """
    hit = replacement_targets(f, refs, F, z, mode)
    if len(hit):
        X[hit] = x
        F[hit] = f
    return len(hit)


def replacement_targets(f, refs: ReferenceSet, F: np.ndarray, z: IdealPoints, mode: str) -> np.ndarray:
    """Population rows the offspring with objectives ``f`` would replace."""
    return _replacement_kernel(
        np.asarray(f, dtype=float), z.z_l, z.span(), refs.points, refs.neighbours, F, _MODE_CODES[mode]
    )


_MODE_CODES = {"neighbourhood": 0, "subproblem": 1, "single": 2}


@njit(cache=True)
def _cheb(a, b):
    d = 0.0
    for k in range(a.shape[0]):
        v = abs(a[k] - b[k])
        if v > d:
            d = v
    return d


@njit(cache=True)
def _replacement_kernel(f, z_l, span, R, neighbours, F, mode):
    yn = (f - z_l) / span
    best = np.inf
    j = 0
    for r in range(R.shape[0]):
        d = _cheb(yn, R[r])
        if d < best:
            best, j = d, r
    if mode == 2:
        cand = neighbours[j, :1].copy()
        cand[0] = j
    else:
        cand = neighbours[j]
    hit = np.empty(cand.shape[0], dtype=np.int64)
    count = 0
    for s in cand:
        xn = (F[s] - z_l) / span
        target = s if mode == 1 else j
        if _cheb(yn, R[target]) < _cheb(xn, R[target]):
            hit[count] = s
            count += 1
    return hit[:count]


def _offspring(i, X, refs, prob, params, lower, upper, rng):
    N = len(X)
    if params.kind == "de":
        pool = refs.neighbours[i] if rng.random() < prob else None
        a = draw_from(pool, N, (i,), rng)
        b = draw_from(pool, N, (i, a), rng)
        child = de_offspring(X[i], X[a], X[b], params, lower, upper, rng)
    else:
        k = select_mate(i, refs.neighbours[i], N, prob, rng)
        child = sbx_crossover(X[i], X[k], params, lower, upper, rng)
    return polynomial_mutation(child, params, lower, upper, rng)


def _check(X, F, refs, archive, N):
    if len(X) != N or len(F) != N or len(refs) != N:
        raise ConsistencyError(f"population/reference sizes {len(X)}/{len(refs)} differ from N={N}")
    if not np.allclose(refs.points.sum(axis=1), 0.0, atol=1e-9):
        raise ConsistencyError("reference points left the plane")
    if len(archive) and len(nondominated_filter(archive.F)) != len(archive):
        raise ConsistencyError("archive holds dominated members")
    if len(archive) > archive.capacity:
        raise ConsistencyError("archive over capacity")


def run_area(cfg: AreaConfig) -> RunResult:
    """Run AREA once; deterministic for a fixed ``cfg.seed``.

    Raises:
        ConfigurationError: invalid settings, including a budget below two
            population sizes (initialisation plus one generation).
    """
    cfg.validate()
    start = time.perf_counter()
    p = cfg.problem
    N, M = cfg.N, p.M
    rng = np.random.default_rng(cfg.seed)
    lower, upper = p.lower, p.upper
    params = cfg.operator

    R0 = initial_reference_set(M, N, cfg.T)
    refs = R0
    X = p.random_solutions(N, rng)
    F = p.func(X)
    fe = N
    capacity = int(math.ceil(cfg.archive_factor * N))
    archive = update_archive(Archive.empty(p.n, M, capacity), X, F)
    z = IdealPoints.from_objectives(F)

    trajectory: list[tuple[int, float]] = []
    pf = cfg.reference_front
    next_mark = 0
    if pf is not None:
        trajectory.append((fe, igd(archive.F, pf)))
        next_mark = (fe // TRAJECTORY_STEP + 1) * TRAJECTORY_STEP

    gen = 0
    prev_mode = None
    evolved = None  # last updated reference set
    while fe < cfg.max_fe:
        mode = cfg.mode_at(fe)
        entering = mode != prev_mode
        prev_mode = mode
        if mode == "evolving":
            if entering and cfg.resume_evolved and evolved is not None:
                refs = evolved
                X, F = match_population(X, F, archive.X, archive.F, refs.points, z)
            if entering or cfg.evolve_every_generation:
                out = update_reference_set(X, F, archive.X, archive.F, refs, N, cfg.T, z, rng, K=cfg.K)
                refs, X, F = out.refs, out.X, out.F
                evolved = refs
        elif entering or cfg.match_every_generation:
            refs = R0
            X, F = match_population(X, F, archive.X, archive.F, R0.points, z)
        if cfg.check_invariants:
            _check(X, F, refs, archive, N)

        prob = local_mating_probabilities(normalize(F, z), normalize(archive.F, z), M)
        QX = np.empty((N, p.n))
        QF = np.empty((N, M))
        for i in range(N):
            y = _offspring(i, X, refs, prob[i], params, lower, upper, rng)
            fy = p.func(y[None, :])[0]
            fe += 1
            z.update_ideal(fy)
            QX[i], QF[i] = y, fy
            replace_in_neighbourhood(y, fy, refs, X, F, z, cfg.replacement)

        if cfg.upper_point == "merged":
            z.z_u = np.maximum(F.max(axis=0), QF.max(axis=0))
        elif cfg.upper_point == "population":
            z.z_u = F.max(axis=0)
        archive = update_archive(archive, np.vstack([X, QX]), np.vstack([F, QF]), z)
        if cfg.upper_point == "archive":
            z.z_u = archive.F.max(axis=0)
        gen += 1
        if cfg.check_invariants:
            _check(X, F, refs, archive, N)
        if log.isEnabledFor(logging.DEBUG):
            log.debug("gen=%d fe=%d mode=%s archive=%d", gen, fe, mode, len(archive))
        if pf is not None and fe >= next_mark:
            trajectory.append((fe, igd(archive.F, pf)))
            next_mark = (fe // TRAJECTORY_STEP + 1) * TRAJECTORY_STEP

    keep = assess_indices(archive, N)
    return RunResult(
        X=X,
        F=F,
        archive=archive.F[keep].copy(),
        archive_X=archive.X[keep].copy(),
        igd_trajectory=trajectory,
        fe_used=fe,
        generations=gen,
        wall_time=time.perf_counter() - start,
        seed=cfg.seed,
    )

