"""Benchmark problems: evaluation, box bounds and true Pareto-front samples.

Every objective function here is vectorised: it takes an ``(k, n)`` array of
decision vectors and returns a ``(k, M)`` array of objective vectors.
:class:`ProblemSpec` wraps one of them together with its bounds and the
source of its reference front.

Reference fronts come from one of two places. The DTLZ family (including the
inverted, scaled and convex variants) is sampled analytically. MOP, UF, WFG
and F1-F8 fronts are read from ``<problem>_<M>d.pf`` files shipped in
``areamo/data`` (or the directory named by ``AREA_DATA_DIR``); those files
are produced by ``scripts/generate_fronts.py`` from :func:`construct_front`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable

import numpy as np

from .core import ConfigurationError, UsageError, nondominated_filter

PI = np.pi
DATA_DIR = Path(__file__).parent / "data"


class DataError(RuntimeError):
    """A required reference-front file is missing or malformed."""


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    n_obj: int
    n_var: int
    lower: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    # "analytic" or a reference-front file name
    pf_source: str = "analytic"

    @property
    def M(self) -> int:
        return self.n_obj

    @property
    def n(self) -> int:
        return self.n_var

    def evaluate(self, x) -> np.ndarray:
        """Objective vector of one decision vector; refuses out-of-box input."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n_var,):
            raise UsageError(f"{self.name}: expected {self.n_var} variables, got shape {x.shape}")
        if np.any(x < self.lower) or np.any(x > self.upper):
            raise UsageError(f"{self.name}: decision vector outside the box bounds")
        return self.func(x[None, :])[0]

    def evaluate_many(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.n_var:
            raise UsageError(f"{self.name}: expected {self.n_var} variables, got {X.shape[1]}")
        if np.any(X < self.lower) or np.any(X > self.upper):
            raise UsageError(f"{self.name}: decision vector outside the box bounds")
        return self.func(X)

    def bounds(self) -> np.ndarray:
        return np.column_stack([self.lower, self.upper])

    def random_solutions(self, count: int, rng: np.random.Generator) -> np.ndarray:
        return self.lower + rng.random((count, self.n_var)) * (self.upper - self.lower)


def evaluate(p: ProblemSpec, x) -> np.ndarray:
    return p.evaluate(x)


def bounds(p: ProblemSpec) -> np.ndarray:
    """Per-variable ``[low, high]`` rows."""
    return p.bounds()


# ---------------------------------------------------------------------------
# DTLZ building blocks
# ---------------------------------------------------------------------------


def sphere_shape(theta: np.ndarray) -> np.ndarray:
    """DTLZ2-style unit-sphere map of ``(k, M-1)`` position values in [0, 1].

    Objective ``i`` is the product of the cosines of the first ``M-1-i``
    angles, times the sine of the next one for ``i > 0``.
    """
    k = theta.shape[0]
    ones = np.ones((k, 1))
    head = np.concatenate([ones, np.cumprod(np.cos(0.5 * PI * theta), axis=1)], axis=1)
    tail = np.concatenate([ones, np.sin(0.5 * PI * theta[:, ::-1])], axis=1)
    return head[:, ::-1] * tail


def linear_shape(x: np.ndarray) -> np.ndarray:
    """DTLZ1 hyperplane map (objectives sum to one) of position values."""
    k, m1 = x.shape
    M = m1 + 1
    out = np.ones((k, M))
    for i in range(M):
        out[:, i] = np.prod(x[:, : M - 1 - i], axis=1)
        if i > 0:
            out[:, i] *= 1.0 - x[:, M - 1 - i]
    return out


def _dtlz1(X, M):
    xm = X[:, M - 1:]
    k = xm.shape[1]
    g = 100.0 * (k + np.sum((xm - 0.5) ** 2 - np.cos(20.0 * PI * (xm - 0.5)), axis=1))
    return 0.5 * (1.0 + g)[:, None] * linear_shape(X[:, : M - 1])


def _dtlz2(X, M):
    g = np.sum((X[:, M - 1:] - 0.5) ** 2, axis=1)
    return (1.0 + g)[:, None] * sphere_shape(X[:, : M - 1])


def _dtlz5(X, M):
    g = np.sum((X[:, M - 1:] - 0.5) ** 2, axis=1)
    theta = np.empty((X.shape[0], M - 1))
    theta[:, 0] = X[:, 0]
    # angles 2..M-1 collapse towards pi/4 as g -> 0; stored as fractions of pi/2
    theta[:, 1:] = (1.0 + 2.0 * g[:, None] * X[:, 1 : M - 1]) / (2.0 * (1.0 + g[:, None]))
    return (1.0 + g)[:, None] * sphere_shape(theta)


def _dtlz7(X, M):
    xm = X[:, M - 1:]
    g = 1.0 + 9.0 / xm.shape[1] * np.sum(xm, axis=1)
    f = np.empty((X.shape[0], M))
    f[:, : M - 1] = X[:, : M - 1]
    h = M - np.sum(f[:, : M - 1] / (1.0 + g[:, None]) * (1.0 + np.sin(3.0 * PI * f[:, : M - 1])), axis=1)
    f[:, M - 1] = (1.0 + g) * h
    return f


def _idtlz1(X, M):
    xm = X[:, M - 1:]
    k = xm.shape[1]
    g = 100.0 * (k + np.sum((xm - 0.5) ** 2 - np.cos(20.0 * PI * (xm - 0.5)), axis=1))
    return 0.5 * (1.0 + g)[:, None] - _dtlz1(X, M)


def _idtlz2(X, M):
    g = np.sum((X[:, M - 1:] - 0.5) ** 2, axis=1)
    return (1.0 + g)[:, None] - _dtlz2(X, M)


def _sdtlz2(X, M):
    return _dtlz2(X, M) * 2.0 ** np.arange(M)


def _cdtlz2(X, M):
    f = _dtlz2(X, M)
    f[:, : M - 1] **= 4
    f[:, M - 1] **= 2
    return f


# ---------------------------------------------------------------------------
# F5-F8: DTLZ2 geometry with modified g
# ---------------------------------------------------------------------------


def _f5_g(X, M):
    pos = X[:, : M - 1]
    return np.sum((X[:, M - 1:] - 0.5) ** 2, axis=1) + np.prod(
        np.abs(np.sin(0.5 * PI * np.floor(4.0 * pos + 1.6))), axis=1
    )


def _f6_g(X, M):
    pos = X[:, : M - 1]
    return np.prod(pos, axis=1) ** 0.1 * np.sum((X[:, M - 1:] - 0.5) ** 2, axis=1) + np.prod(
        np.abs(np.sin(2.0 * PI * pos)), axis=1
    )


def _f7_g(X, M):
    pos = X[:, : M - 1]
    p = np.prod(pos, axis=1)
    shifted = np.prod(pos - 2.0, axis=1)
    return np.sum((X[:, M - 1:] - p[:, None]) ** 2, axis=1) + np.abs(
        np.sin(0.5 * PI * np.floor(4.0 * shifted))
    )


def _dtlz2_with(gfun):
    def func(X, M):
        return (1.0 + gfun(X, M))[:, None] * sphere_shape(X[:, : M - 1])

    return func


def _f8(X, M):
    n = X.shape[1]
    g = np.sum(((X[:, M - 1:] - X[:, [0]]) / n) ** 2, axis=1)
    s = np.sum(X[:, :M], axis=1)
    f = np.empty((X.shape[0], M))
    f[:, : M - 1] = 1.0 + g[:, None] * ((1.0 + s[:, None]) / X[:, : M - 1] - 1.0)
    f[:, M - 1] = s
    return f


# ---------------------------------------------------------------------------
# F1-F4: biobjective irregular fronts (x1 position, linked distance variables)
# ---------------------------------------------------------------------------


def _f_biobjective_g(X):
    t = X[:, 1:] - np.sin(0.5 * PI * X[:, [0]])
    return np.sum(t**2, axis=1)


def _f1_shape(x1):
    return (1.0 - np.sqrt(x1)) ** 2


def _f2_shape(x1):
    return 1.0 - np.sqrt(x1) - x1 * np.sin(10.0 * PI * x1)


def _f3_shape(x1):
    return (1.0 - np.sqrt(x1)) ** 2 + 0.1 * np.sin(4.0 * PI * x1) ** 2


def _f4_shape(x1):
    return 1.0 - x1 + 0.1 * np.sin(2.0 * PI * x1)


def _biobjective(shape):
    def func(X, M):
        g = 1.0 + _f_biobjective_g(X)
        return np.column_stack([g * X[:, 0], g * shape(X[:, 0])])

    return func


# ---------------------------------------------------------------------------
# MOP1-MOP7
# ---------------------------------------------------------------------------


def _mop_t(X, M):
    if M == 2:
        return X[:, 1:] - np.sin(0.5 * PI * X[:, [0]])
    return X[:, 2:] - (X[:, 0] * X[:, 1])[:, None]


def _mop_sum_a(t):
    return np.sum(-0.9 * t**2 + np.abs(t) ** 0.6, axis=1)


def _mop_sum_b(t):
    a = np.abs(t)
    return np.sum(a / (1.0 + np.exp(5.0 * a)), axis=1)


def _mop1(X, M):
    g = 2.0 * np.sin(PI * X[:, 0]) * _mop_sum_a(_mop_t(X, 2))
    return np.column_stack([(1 + g) * X[:, 0], (1 + g) * (1 - np.sqrt(X[:, 0]))])


def _mop2(X, M):
    g = 10.0 * np.sin(PI * X[:, 0]) * _mop_sum_b(_mop_t(X, 2))
    return np.column_stack([(1 + g) * X[:, 0], (1 + g) * (1 - X[:, 0] ** 2)])


def _mop3(X, M):
    g = 10.0 * np.sin(0.5 * PI * X[:, 0]) * _mop_sum_b(_mop_t(X, 2))
    return np.column_stack([(1 + g) * np.cos(0.5 * PI * X[:, 0]), (1 + g) * np.sin(0.5 * PI * X[:, 0])])


def _mop4(X, M):
    g = 10.0 * np.sin(PI * X[:, 0]) * _mop_sum_b(_mop_t(X, 2))
    x1 = X[:, 0]
    return np.column_stack([(1 + g) * x1, (1 + g) * (1 - np.sqrt(x1) * np.cos(2 * PI * x1) ** 2)])


def _mop5(X, M):
    g = 2.0 * np.abs(np.cos(PI * X[:, 0])) * _mop_sum_a(_mop_t(X, 2))
    return np.column_stack([(1 + g) * X[:, 0], (1 + g) * (1 - np.sqrt(X[:, 0]))])


def _mop6(X, M):
    g = 2.0 * np.sin(PI * X[:, 0]) * _mop_sum_a(_mop_t(X, 3))
    x1, x2 = X[:, 0], X[:, 1]
    return (1 + g)[:, None] * np.column_stack([x1 * x2, x1 * (1 - x2), 1 - x1])


def _mop7(X, M):
    g = 2.0 * np.sin(PI * X[:, 0]) * _mop_sum_a(_mop_t(X, 3))
    c1, s1 = np.cos(0.5 * PI * X[:, 0]), np.sin(0.5 * PI * X[:, 0])
    c2, s2 = np.cos(0.5 * PI * X[:, 1]), np.sin(0.5 * PI * X[:, 1])
    return (1 + g)[:, None] * np.column_stack([c1 * c2, c1 * s2, s1])


# ---------------------------------------------------------------------------
# UF1-UF9 (CEC 2009)
# ---------------------------------------------------------------------------


def _uf_sets(n):
    j = np.arange(1, n + 1)
    odd = (j % 2 == 1) & (j >= 3)
    even = (j % 2 == 0) & (j >= 2)
    return j, odd, even


def _uf_sin_residual(X):
    n = X.shape[1]
    j = np.arange(1, n + 1)
    return X - np.sin(6.0 * PI * X[:, [0]] + j * PI / n)


def _uf1(X, M):
    _, J1, J2 = _uf_sets(X.shape[1])
    y2 = _uf_sin_residual(X) ** 2
    x1 = X[:, 0]
    return np.column_stack([x1 + 2 * y2[:, J1].mean(axis=1), 1 - np.sqrt(x1) + 2 * y2[:, J2].mean(axis=1)])


def _uf2(X, M):
    n = X.shape[1]
    j, J1, J2 = _uf_sets(n)
    x1 = X[:, [0]]
    amp = 0.3 * x1**2 * np.cos(24 * PI * x1 + 4 * j * PI / n) + 0.6 * x1
    y = np.where(J1, X - amp * np.cos(6 * PI * x1 + j * PI / n), X - amp * np.sin(6 * PI * x1 + j * PI / n))
    y2 = y**2
    x1 = X[:, 0]
    return np.column_stack([x1 + 2 * y2[:, J1].mean(axis=1), 1 - np.sqrt(x1) + 2 * y2[:, J2].mean(axis=1)])


def _uf_cos_product_term(y, j, mask):
    ys = y[:, mask]
    js = j[mask]
    return 4 * np.sum(ys**2, axis=1) - 2 * np.prod(np.cos(20 * ys * PI / np.sqrt(js)), axis=1) + 2


def _uf3(X, M):
    n = X.shape[1]
    j, J1, J2 = _uf_sets(n)
    x1 = X[:, [0]]
    y = X - x1 ** (0.5 * (1.0 + 3.0 * (j - 2) / (n - 2)))
    x1 = X[:, 0]
    return np.column_stack(
        [
            x1 + 2.0 / J1.sum() * _uf_cos_product_term(y, j, J1),
            1 - np.sqrt(x1) + 2.0 / J2.sum() * _uf_cos_product_term(y, j, J2),
        ]
    )


def _uf4(X, M):
    _, J1, J2 = _uf_sets(X.shape[1])
    a = np.abs(_uf_sin_residual(X))
    h = a / (1.0 + np.exp(2.0 * a))
    x1 = X[:, 0]
    return np.column_stack([x1 + 2 * h[:, J1].mean(axis=1), 1 - x1**2 + 2 * h[:, J2].mean(axis=1)])


def _uf5(X, M):
    _, J1, J2 = _uf_sets(X.shape[1])
    y = _uf_sin_residual(X)
    h = 2 * y**2 - np.cos(4 * PI * y) + 1
    x1 = X[:, 0]
    N, eps = 10, 0.1
    ripple = (0.5 / N + eps) * np.abs(np.sin(2 * N * PI * x1))
    return np.column_stack([x1 + ripple + 2 * h[:, J1].mean(axis=1), 1 - x1 + ripple + 2 * h[:, J2].mean(axis=1)])


def _uf6(X, M):
    n = X.shape[1]
    j, J1, J2 = _uf_sets(n)
    y = _uf_sin_residual(X)
    x1 = X[:, 0]
    N, eps = 2, 0.1
    ripple = np.maximum(0.0, 2 * (0.5 / N + eps) * np.sin(2 * N * PI * x1))
    return np.column_stack(
        [
            x1 + ripple + 2.0 / J1.sum() * _uf_cos_product_term(y, j, J1),
            1 - x1 + ripple + 2.0 / J2.sum() * _uf_cos_product_term(y, j, J2),
        ]
    )


def _uf7(X, M):
    _, J1, J2 = _uf_sets(X.shape[1])
    y2 = _uf_sin_residual(X) ** 2
    r = X[:, 0] ** 0.2
    return np.column_stack([r + 2 * y2[:, J1].mean(axis=1), 1 - r + 2 * y2[:, J2].mean(axis=1)])


def _uf_tri_sets(n):
    j = np.arange(1, n + 1)
    J1 = (j >= 3) & ((j - 1) % 3 == 0)
    J2 = (j >= 3) & ((j - 2) % 3 == 0)
    J3 = (j >= 3) & (j % 3 == 0)
    return j, J1, J2, J3


def _uf_tri_residual(X):
    n = X.shape[1]
    j = np.arange(1, n + 1)
    return (X - 2.0 * X[:, [1]] * np.sin(2 * PI * X[:, [0]] + j * PI / n)) ** 2


def _uf8(X, M):
    _, J1, J2, J3 = _uf_tri_sets(X.shape[1])
    y2 = _uf_tri_residual(X)
    x1, x2 = X[:, 0], X[:, 1]
    return np.column_stack(
        [
            np.cos(0.5 * PI * x1) * np.cos(0.5 * PI * x2) + 2 * y2[:, J1].mean(axis=1),
            np.cos(0.5 * PI * x1) * np.sin(0.5 * PI * x2) + 2 * y2[:, J2].mean(axis=1),
            np.sin(0.5 * PI * x1) + 2 * y2[:, J3].mean(axis=1),
        ]
    )


def _uf9(X, M):
    _, J1, J2, J3 = _uf_tri_sets(X.shape[1])
    y2 = _uf_tri_residual(X)
    x1, x2 = X[:, 0], X[:, 1]
    eps = 0.1
    bump = np.maximum(0.0, (1 + eps) * (1 - 4 * (2 * x1 - 1) ** 2))
    return np.column_stack(
        [
            0.5 * (bump + 2 * x1) * x2 + 2 * y2[:, J1].mean(axis=1),
            0.5 * (bump - 2 * x1 + 2) * x2 + 2 * y2[:, J2].mean(axis=1),
            1 - x2 + 2 * y2[:, J3].mean(axis=1),
        ]
    )


# ---------------------------------------------------------------------------
# WFG2, WFG4, WFG6
# ---------------------------------------------------------------------------


def _correct01(y):
    return np.clip(y, 0.0, 1.0)


def _s_linear(y, a):
    return _correct01(np.abs(y - a) / np.abs(np.floor(a - y) + a))


def _s_multi(y, A, B, C):
    t = np.abs(y - C) / (2.0 * (np.floor(C - y) + C))
    return _correct01((1.0 + np.cos((4.0 * A + 2.0) * PI * (0.5 - t)) + 4.0 * B * t**2) / (B + 2.0))


def _r_sum(y):
    return _correct01(y.mean(axis=1))


def _r_nonsep(y, A):
    m = y.shape[1]
    num = np.zeros(y.shape[0])
    for j in range(m):
        num += y[:, j]
        for k in range(A - 1):
            num += np.abs(y[:, j] - y[:, (1 + j + k) % m])
    half = np.ceil(A / 2.0)
    return _correct01(num / (m / A * half * (1.0 + 2.0 * A - 2.0 * half)))


def _wfg_convex(x):
    k, m1 = x.shape
    M = m1 + 1
    c = 1.0 - np.cos(0.5 * PI * x)
    s = 1.0 - np.sin(0.5 * PI * x)
    out = np.empty((k, M))
    for i in range(M):
        out[:, i] = np.prod(c[:, : M - 1 - i], axis=1)
        if i > 0:
            out[:, i] *= s[:, M - 1 - i]
    return out


def _wfg_concave(x):
    # WFG's concave shape is the DTLZ2 sphere with sin and cos exchanged
    return sphere_shape(1.0 - x)


def _wfg_disc(x1, alpha=1.0, beta=1.0, A=5.0):
    return 1.0 - x1**alpha * np.cos(A * x1**beta * PI) ** 2


def _wfg_output(t, shape, M):
    # A_i = 1 for WFG2/4/6, so position values pass through max(t_M, 1) unchanged
    xm = t[:, M - 1]
    S = 2.0 * np.arange(1, M + 1)
    return xm[:, None] + S * shape


def _wfg_group_positions(y, M, k):
    gap = k // (M - 1)
    return [y[:, i * gap : (i + 1) * gap] for i in range(M - 1)]


def _wfg2(X, M, k):
    n = X.shape[1]
    z = X / (2.0 * np.arange(1, n + 1))
    y = z.copy()
    y[:, k:] = _s_linear(z[:, k:], 0.35)
    l = n - k
    pairs = [_r_nonsep(y[:, k + 2 * i : k + 2 * i + 2], 2) for i in range(l // 2)]
    y2 = np.column_stack([y[:, :k]] + pairs)
    t = np.column_stack([_r_sum(g) for g in _wfg_group_positions(y2, M, k)] + [_r_sum(y2[:, k:])])
    x = t[:, : M - 1]
    shape = _wfg_convex(x)
    shape[:, M - 1] = _wfg_disc(x[:, 0])
    return _wfg_output(t, shape, M)


def _wfg4(X, M, k):
    n = X.shape[1]
    y = _s_multi(X / (2.0 * np.arange(1, n + 1)), 30.0, 10.0, 0.35)
    t = np.column_stack([_r_sum(g) for g in _wfg_group_positions(y, M, k)] + [_r_sum(y[:, k:])])
    return _wfg_output(t, _wfg_concave(t[:, : M - 1]), M)


def _wfg6(X, M, k):
    n = X.shape[1]
    z = X / (2.0 * np.arange(1, n + 1))
    y = z.copy()
    y[:, k:] = _s_linear(z[:, k:], 0.35)
    gap = k // (M - 1)
    t = np.column_stack(
        [_r_nonsep(g, gap) for g in _wfg_group_positions(y, M, k)] + [_r_nonsep(y[:, k:], n - k)]
    )
    return _wfg_output(t, _wfg_concave(t[:, : M - 1]), M)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_DTLZ_FUNCS = {
    "DTLZ1": _dtlz1,
    "DTLZ2": _dtlz2,
    "DTLZ5": _dtlz5,
    "DTLZ7": _dtlz7,
    "IDTLZ1": _idtlz1,
    "IDTLZ2": _idtlz2,
    "SDTLZ2": _sdtlz2,
    "CDTLZ2": _cdtlz2,
    "F5": _dtlz2_with(_f5_g),
    "F6": _dtlz2_with(_f6_g),
    "F7": _dtlz2_with(_f7_g),
    "F8": _f8,
}
_MOP_FUNCS = {
    "MOP1": (_mop1, 2),
    "MOP2": (_mop2, 2),
    "MOP3": (_mop3, 2),
    "MOP4": (_mop4, 2),
    "MOP5": (_mop5, 2),
    "MOP6": (_mop6, 3),
    "MOP7": (_mop7, 3),
}
_UF_FUNCS = {
    "UF1": (_uf1, 2),
    "UF2": (_uf2, 2),
    "UF3": (_uf3, 2),
    "UF4": (_uf4, 2),
    "UF5": (_uf5, 2),
    "UF6": (_uf6, 2),
    "UF7": (_uf7, 2),
    "UF8": (_uf8, 3),
    "UF9": (_uf9, 3),
}
_F_BIOBJ = {"F1": _f1_shape, "F2": _f2_shape, "F3": _f3_shape, "F4": _f4_shape}
_WFG_FUNCS = {"WFG2": _wfg2, "WFG4": _wfg4, "WFG6": _wfg6}

# Objective counts accepted per family
_DTLZ_M = range(2, 16)
_WFG_M = (3, 8, 15)
_ANALYTIC = {"DTLZ1", "DTLZ2", "DTLZ5", "DTLZ7", "IDTLZ1", "IDTLZ2", "SDTLZ2", "CDTLZ2"}

MOP_N_VAR = 10
UF_N_VAR = 30
F_BIOBJ_N_VAR = 10
WFG_DISTANCE_PARAMS = 20

PROBLEM_NAMES = (
    list(_DTLZ_FUNCS)
    + list(_MOP_FUNCS)
    + list(_UF_FUNCS)
    + list(_WFG_FUNCS)
    + list(_F_BIOBJ)
)


def front_file_name(name: str, M: int) -> str:
    return f"{name}_{M}d.pf"


def make_problem(name: str, M: int | None = None) -> ProblemSpec:
    """Build a configured :class:`ProblemSpec`.

    ``M`` may be omitted for fixed-dimension families (MOP, UF, F1-F4). DTLZ
    variants and F5-F8 default to three objectives.

    Raises:
        ConfigurationError: unknown problem name or unsupported ``M``.
    """
    key = name.upper()
    if key in _MOP_FUNCS or key in _UF_FUNCS or key in _F_BIOBJ:
        if key in _MOP_FUNCS:
            func, m_fixed = _MOP_FUNCS[key]
            n = MOP_N_VAR
        elif key in _UF_FUNCS:
            func, m_fixed = _UF_FUNCS[key]
            n = UF_N_VAR
        else:
            func, m_fixed = _biobjective(_F_BIOBJ[key]), 2
            n = F_BIOBJ_N_VAR
        if M is not None and M != m_fixed:
            raise ConfigurationError(f"{key} is defined for M={m_fixed} only, got M={M}")
        M = m_fixed
        lower, upper = np.zeros(n), np.ones(n)
        if key in ("UF1", "UF2", "UF5", "UF6", "UF7"):
            lower[1:] = -1.0
        elif key == "UF4":
            lower[1:], upper[1:] = -2.0, 2.0
        elif key in ("UF8", "UF9"):
            lower[2:], upper[2:] = -2.0, 2.0
        bound = _bind(func, M)
        return ProblemSpec(key, M, n, lower, upper, bound, front_file_name(key, M))

    if key in _DTLZ_FUNCS:
        M = 3 if M is None else int(M)
        if M not in _DTLZ_M:
            raise ConfigurationError(f"{key} does not support M={M}")
        n = M + 9
        lower, upper = np.zeros(n), np.ones(n)
        if key == "F8":
            lower[:], upper[:] = 1.0, 4.0
        source = "analytic" if key in _ANALYTIC else front_file_name(key, M)
        return ProblemSpec(key, M, n, lower, upper, _bind(_DTLZ_FUNCS[key], M), source)

    if key in _WFG_FUNCS:
        M = 3 if M is None else int(M)
        if M not in _WFG_M:
            raise ConfigurationError(f"{key} supports M in {_WFG_M}, got M={M}")
        k = 2 * (M - 1)
        n = k + WFG_DISTANCE_PARAMS
        func = _WFG_FUNCS[key]
        upper = 2.0 * np.arange(1, n + 1)
        source = "analytic" if key in ("WFG4", "WFG6") else front_file_name(key, M)
        return ProblemSpec(key, M, n, np.zeros(n), upper, lambda X, f=func, M=M, k=k: f(X, M, k), source)

    raise ConfigurationError(f"unknown problem {name!r}")


def _bind(func, M):
    return lambda X: func(X, M)


# ---------------------------------------------------------------------------
# Pareto-front samples
# ---------------------------------------------------------------------------


def _lattice_count(M: int, H: int) -> int:
    from math import comb

    return comb(H + M - 1, M - 1)


def _simplex_points(M: int, count: int) -> np.ndarray:
    from .reference import simplex_lattice

    H = 1
    while _lattice_count(M, H + 1) <= count:
        H += 1
    return simplex_lattice(M, H)


def _sphere_points(M: int, count: int) -> np.ndarray:
    W = _simplex_points(M, count)
    return W / np.linalg.norm(W, axis=1, keepdims=True)


def farthest_point_subset(F: np.ndarray, count: int) -> np.ndarray:
    """Deterministic greedy max-min subset of ``count`` rows, seeded at the smallest first objective."""
    if len(F) <= count:
        return F
    chosen = [int(np.argmin(F[:, 0]))]
    d = np.linalg.norm(F - F[chosen[0]], axis=1)
    for _ in range(count - 1):
        nxt = int(np.argmax(d))
        chosen.append(nxt)
        d = np.minimum(d, np.linalg.norm(F - F[nxt], axis=1))
    return F[np.sort(chosen)]


def _nd_thin(F: np.ndarray, count: int) -> np.ndarray:
    F = np.unique(np.round(F, 12), axis=0)
    return farthest_point_subset(F[nondominated_filter(F)], count)


def _grid(M: int, per_axis: int) -> np.ndarray:
    axes = [np.linspace(0.0, 1.0, per_axis)] * (M - 1)
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, M - 1)


def _dtlz7_front(M, count):
    per_axis = 1000 if M == 2 else int(round(12000 ** (1.0 / (M - 1))))
    pos = _grid(M, per_axis)
    X = np.column_stack([pos, np.zeros((len(pos), 10))])
    return _nd_thin(_dtlz7(X, M), count)


def _analytic_front(name: str, M: int, count: int) -> np.ndarray:
    if name == "DTLZ1":
        return 0.5 * _simplex_points(M, count)
    if name in ("DTLZ2", "WFG4", "WFG6", "SDTLZ2", "CDTLZ2", "IDTLZ2"):
        F = _sphere_points(M, count)
        if name in ("WFG4", "WFG6"):
            return F * 2.0 * np.arange(1, M + 1)
        if name == "SDTLZ2":
            return F * 2.0 ** np.arange(M)
        if name == "CDTLZ2":
            # sample in the position space of DTLZ2, then transform; keeps the
            # convex front dense near its axes
            F = F.copy()
            F[:, : M - 1] **= 4
            F[:, M - 1] **= 2
            return F
        if name == "IDTLZ2":
            return 1.0 - F
        return F
    if name == "IDTLZ1":
        return 0.5 - 0.5 * _simplex_points(M, count)
    if name == "DTLZ5":
        theta = np.linspace(0.0, 1.0, count)
        pos = np.full((count, M - 1), 0.5)
        pos[:, 0] = theta
        return sphere_shape(pos)
    if name == "DTLZ7":
        return _dtlz7_front(M, count)
    raise DataError(f"no analytic front for {name}")


def construct_front(name: str, M: int | None = None, count: int = 1000) -> np.ndarray:
    """Dense construction of the true front on the known optimal manifold.

    Used once to write the bundled ``.pf`` files; slow for WFG2 with many
    objectives.
    """
    p = make_problem(name, M)
    name, M = p.name, p.M
    if p.pf_source == "analytic":
        return _analytic_front(name, M, count)
    if name in ("MOP1", "MOP5", "UF1", "UF2", "UF3"):
        x = np.linspace(0, 1, count)
        return np.column_stack([x, 1 - np.sqrt(x)])
    if name in ("MOP2", "UF4"):
        x = np.linspace(0, 1, count)
        return np.column_stack([x, 1 - x**2])
    if name == "MOP3":
        t = np.linspace(0, 1, count)
        return np.column_stack([np.cos(0.5 * PI * t), np.sin(0.5 * PI * t)])
    if name == "MOP4":
        x = np.linspace(0, 1, 20 * count)
        return _nd_thin(np.column_stack([x, 1 - np.sqrt(x) * np.cos(2 * PI * x) ** 2]), count)
    if name == "MOP6":
        return _simplex_points(3, count)[:, ::-1]
    if name in ("MOP7", "UF8"):
        return _sphere_points(3, count)
    if name == "UF5":
        x = np.arange(21) / 20.0
        return np.column_stack([x, 1 - x])
    if name == "UF6":
        x = np.linspace(0, 1, 20 * count)
        keep = (x == 0) | ((x >= 0.25) & (x <= 0.5)) | ((x >= 0.75) & (x <= 1.0))
        x = farthest_point_subset(x[keep][:, None], count)[:, 0]
        return np.column_stack([x, 1 - x])
    if name == "UF7":
        x = np.linspace(0, 1, count)
        return np.column_stack([x, 1 - x])
    if name == "UF9":
        F = _simplex_points(3, 40 * count)
        f1, f3 = F[:, 0], F[:, 2]
        keep = (f1 <= (1 - f3) / 4 + 1e-12) | (f1 >= 3 * (1 - f3) / 4 - 1e-12)
        return farthest_point_subset(F[keep], count)
    if name in _F_BIOBJ:
        x = np.linspace(0, 1, 50 * count)
        F = np.column_stack([x, _F_BIOBJ[name](x)])
        return _nd_thin(F, count)
    if name in ("F5", "F6", "F7"):
        if M != 3:
            pos = np.random.default_rng(0).random((40000, M - 1))
        else:
            pos = _grid(3, 201)
        if name == "F5":
            gfun = _f5_g
        elif name == "F6":
            gfun = _f6_g
        else:
            gfun = _f7_g
        X = np.column_stack([pos, np.zeros((len(pos), 10))])
        if name == "F7":
            X[:, M - 1:] = np.prod(pos, axis=1)[:, None]
        else:
            X[:, M - 1:] = 0.5
        F = (1.0 + gfun(X, M))[:, None] * sphere_shape(pos)
        return _nd_thin(F, count)
    if name == "F8":
        f = np.ones((1, M))
        f[0, M - 1] = M
        return f
    if name == "WFG2":
        if M == 3:
            pos = _grid(3, 301)
        else:
            pos = np.random.default_rng(0).random((20000, M - 1))
        shape = _wfg_convex(pos)
        shape[:, M - 1] = _wfg_disc(pos[:, 0])
        return _nd_thin(shape * 2.0 * np.arange(1, M + 1), count)
    raise DataError(f"no front construction for {name}")


def data_dir() -> Path:
    env = os.environ.get("AREA_DATA_DIR")
    return Path(env) if env else DATA_DIR


def read_front(path) -> np.ndarray:
    """Load a whitespace-separated ``.pf`` file (one objective vector per line)."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"reference front file not found: {path}")
    F = np.loadtxt(path, ndmin=2)
    if F.size == 0:
        raise DataError(f"reference front file is empty: {path}")
    return F


def write_front(path, F: np.ndarray) -> None:
    """Write objective vectors as space-separated decimals, no header."""
    np.savetxt(path, np.atleast_2d(F), fmt="%.10e", delimiter=" ")


@lru_cache(maxsize=64)
def _cached_front(name: str, M: int, count: int, source: str, directory: str) -> np.ndarray:
    if source == "analytic":
        F = _analytic_front(name, M, count)
    else:
        F = read_front(Path(directory) / source)
    F.setflags(write=False)
    return F


def pf_sample(p: ProblemSpec, count: int = 1000) -> np.ndarray:
    """About ``count`` points of the true Pareto front of ``p``.

    Raises:
        DataError: the problem's reference-front file is missing.
    """
    return _cached_front(p.name, p.M, count, p.pf_source, str(data_dir()))
