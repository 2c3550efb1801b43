"""Variation operators and the adaptive local mating probability.

All operators take an explicit ``numpy.random.Generator`` so a run is
reproducible from its seed, and every child is returned inside the box.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import pairwise_euclidean

PROBABILITY_FLOOR = 0.2
EPS = 1e-14


@dataclass(frozen=True)
class OperatorParams:
    kind: str = "sbx"  # "sbx" (SBX + PM) or "de" (DE/rand/1 + PM)
    eta_c: float = 20.0
    p_c: float = 1.0
    eta_m: float = 20.0
    p_m: float | None = None  # None means 1/n
    F: float = 0.5
    CR: float = 1.0

    def __post_init__(self):
        if self.kind not in ("sbx", "de"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.eta_c <= 0 or self.eta_m <= 0 or self.F <= 0:
            raise ValueError("distribution indices and DE scale must be positive")

    def mutation_rate(self, n: int) -> float:
        return 1.0 / n if self.p_m is None else self.p_m


def local_mating_probabilities(Pn: np.ndarray, An: np.ndarray, M: int) -> np.ndarray:
    """Probability that each population member mates inside its neighbourhood.

    ``d = d1 + d2`` where ``d1`` is the distance to the nearest archive member
    and ``d2`` the product of that member's ``M`` smallest distances to the
    rest of the archive (missing neighbours count as a factor of one). The
    ratio ``d / max(d)`` is lifted by 0.2 and capped at one.
    """
    if len(An) == 0:
        return np.ones(len(Pn))
    DPA = pairwise_euclidean(Pn, An)
    nearest = DPA.argmin(axis=1)
    d1 = DPA[np.arange(len(Pn)), nearest]
    DAA = pairwise_euclidean(An, An)
    np.fill_diagonal(DAA, np.inf)
    k = min(M, len(An) - 1)
    if k > 0:
        closest = np.sort(DAA, axis=1)[:, :k]
        d2 = np.prod(closest, axis=1)
    else:
        d2 = np.ones(len(An))
    d = d1 + d2[nearest]
    top = d.max()
    if top <= 0:
        return np.ones(len(Pn))
    return np.minimum(1.0, d / top + PROBABILITY_FLOOR)


@njit(cache=True)
def _sbx_kernel(p1, p2, lower, upper, eta, swap_u, u, pick_u):
    child = p1.copy()
    for j in range(p1.shape[0]):
        if swap_u[j] > 0.5 or abs(p1[j] - p2[j]) <= EPS:
            continue
        y1 = min(p1[j], p2[j])
        y2 = max(p1[j], p2[j])
        yl, yu = lower[j], upper[j]
        span = y2 - y1
        r = u[j]
        # spread factor towards the lower bound
        beta = 1.0 + 2.0 * (y1 - yl) / span
        alpha = 2.0 - beta ** -(eta + 1.0)
        if r <= 1.0 / alpha:
            bq = (r * alpha) ** (1.0 / (eta + 1.0))
        else:
            bq = (1.0 / (2.0 - r * alpha)) ** (1.0 / (eta + 1.0))
        c1 = 0.5 * (y1 + y2 - bq * span)
        # and towards the upper bound
        beta = 1.0 + 2.0 * (yu - y2) / span
        alpha = 2.0 - beta ** -(eta + 1.0)
        if r <= 1.0 / alpha:
            bq = (r * alpha) ** (1.0 / (eta + 1.0))
        else:
            bq = (1.0 / (2.0 - r * alpha)) ** (1.0 / (eta + 1.0))
        c2 = 0.5 * (y1 + y2 + bq * span)
        c = c2 if pick_u[j] <= 0.5 else c1
        child[j] = min(max(c, yl), yu)
    return child


@njit(cache=True)
def _pm_kernel(x, lower, upper, eta, rate, hit_u, u):
    y = x.copy()
    power = 1.0 / (eta + 1.0)
    for j in range(x.shape[0]):
        if hit_u[j] >= rate:
            continue
        yl, yu = lower[j], upper[j]
        span = yu - yl
        r = u[j]
        if r < 0.5:
            d1 = (y[j] - yl) / span
            val = 2.0 * r + (1.0 - 2.0 * r) * (1.0 - d1) ** (eta + 1.0)
            dq = val**power - 1.0
        else:
            d2 = (yu - y[j]) / span
            val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * (1.0 - d2) ** (eta + 1.0)
            dq = 1.0 - val**power
        y[j] = min(max(y[j] + dq * span, yl), yu)
    return y


def sbx_crossover(p1, p2, params: OperatorParams, lower, upper, rng: np.random.Generator) -> np.ndarray:
    """Simulated binary crossover with bound-aware spread; returns one child.

    Each variable takes part with probability 0.5, and the child keeps one of
    the two offspring values at random, clamped to the box.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if rng.random() > params.p_c:
        return p1.copy()
    draws = rng.random((3, len(p1)))
    return _sbx_kernel(p1, p2, lower, upper, params.eta_c, draws[0], draws[1], draws[2])


def polynomial_mutation(x, params: OperatorParams, lower, upper, rng: np.random.Generator) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    draws = rng.random((2, len(x)))
    return _pm_kernel(x, lower, upper, params.eta_m, params.mutation_rate(len(x)), draws[0], draws[1])


def de_offspring(target, a, b, params: OperatorParams, lower, upper, rng: np.random.Generator) -> np.ndarray:
    """DE/rand/1 trial ``target + F (a - b)`` with binomial crossover.

    Components leaving the box are put halfway between the target value and
    the violated bound. Polynomial mutation is applied separately.
    """
    target = np.asarray(target, dtype=float)
    n = len(target)
    gate = rng.random(n) < params.CR
    gate[rng.integers(n)] = True
    v = np.where(gate, target + params.F * (np.asarray(a) - np.asarray(b)), target)
    v = np.where(v < lower, 0.5 * (target + lower), v)
    v = np.where(v > upper, 0.5 * (target + upper), v)
    return v


def select_mate(i: int, neighbourhood, pop_size: int, prob: float, rng: np.random.Generator) -> int:
    """Pick a partner for member ``i``.

    With probability ``prob`` the partner is drawn from ``neighbourhood``,
    otherwise from the whole population; ``i`` itself is excluded. If the
    neighbourhood holds only ``i``, the whole population is used.
    """
    pool = np.asarray(neighbourhood) if rng.random() < prob else None
    if pool is not None:
        others = pool[pool != i]
        if len(others):
            return int(others[rng.integers(len(others))])
    if pop_size <= 1:
        return i
    k = int(rng.integers(pop_size - 1))
    return k + 1 if k >= i else k


def draw_from(pool: np.ndarray | None, pop_size: int, exclude: tuple[int, ...], rng: np.random.Generator) -> int:
    """Uniform draw from ``pool`` (or the whole population) avoiding ``exclude`` when possible."""
    if pool is None:
        pool = np.arange(pop_size)
    others = pool[~np.isin(pool, exclude)]
    if len(others) == 0:
        others = np.setdiff1d(np.arange(pop_size), exclude)
        if len(others) == 0:
            return exclude[0]
    return int(others[rng.integers(len(others))])
