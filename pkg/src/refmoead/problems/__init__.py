"""Benchmark problems: IMOP1-8, DTLZ1-4, WFG1-4.

>>> spec = get_problem("IMOP2")
>>> evaluate(spec, np.r_[np.ones(5), np.full(5, 0.5)])
array([0., 1.])
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import dtlz, imop, wfg
from .base import ProblemError, ProblemSpec, nondominated_mask

__all__ = [
    "ProblemError",
    "ProblemSpec",
    "PROBLEM_IDS",
    "BENCHMARK_PRESETS",
    "evaluate",
    "evaluate_many",
    "get_problem",
    "nondominated_mask",
    "pf_sample",
    "true_ideal",
]

# id -> (N, M, D, maxFE)
BENCHMARK_PRESETS: dict[str, tuple[int, int, int, int]] = {
    "IMOP1": (100, 2, 10, 20000),
    "IMOP2": (100, 2, 10, 20000),
    "IMOP3": (100, 2, 10, 20000),
    "IMOP4": (100, 3, 10, 20000),
    "IMOP5": (100, 3, 10, 20000),
    "IMOP6": (100, 3, 10, 20000),
    "IMOP7": (100, 3, 10, 20000),
    "IMOP8": (100, 3, 10, 20000),
    "WFG1": (100, 3, 12, 30000),
    "WFG2": (100, 3, 12, 30000),
    "WFG3": (100, 3, 12, 30000),
    "WFG4": (100, 3, 12, 30000),
    "DTLZ1": (100, 3, 7, 20000),
    "DTLZ2": (100, 3, 12, 20000),
    "DTLZ3": (100, 3, 12, 20000),
    "DTLZ4": (100, 3, 12, 20000),
}

PROBLEM_IDS = tuple(BENCHMARK_PRESETS)

# fronts whose componentwise minimum is not the origin
_NONZERO_IDEAL = {"IMOP3", "IMOP5", "IMOP8"}

PF_COUNT = 10_000


def _family(pid: str):
    if pid.startswith("IMOP"):
        return imop
    if pid.startswith("DTLZ"):
        return dtlz
    return wfg


@lru_cache(maxsize=None)
def get_problem(problem_id: str, M: int | None = None, D: int | None = None,
                K: int | None = None) -> ProblemSpec:
    """Build the ProblemSpec for ``problem_id`` (case-insensitive).

    Unspecified dimensions default to the shipped benchmark presets. IMOP
    problems have fixed M (2 for IMOP1-3, 3 otherwise).
    """
    pid = str(problem_id).upper()
    if pid not in BENCHMARK_PRESETS:
        raise ProblemError(f"unknown problem {problem_id!r}; known: {', '.join(PROBLEM_IDS)}")
    _, M0, D0, _ = BENCHMARK_PRESETS[pid]
    if pid.startswith("IMOP"):
        if M is not None and M != M0:
            raise ProblemError(f"{pid} has M={M0}")
        D = D0 if D is None else D
        K = 5 if K is None else K
        if not 1 <= K < D:
            raise ProblemError(f"{pid} needs 1 <= K < D, got K={K}, D={D}")
        return imop.make_spec(pid, M0, D, K=K)
    M = M0 if M is None else M
    if M not in (2, 3):
        raise ProblemError(f"only M in {{2, 3}} is supported, got {M}")
    if pid.startswith("DTLZ"):
        D = dtlz.default_D(pid, M) if D is None else D
        if D < M:
            raise ProblemError(f"{pid} needs D >= M")
        return ProblemSpec(pid, M, D, (0.0,) * D, (1.0,) * D)
    D = D0 if D is None else D
    k = 2 * (M - 1) if K is None else K
    l = D - k
    if k % (M - 1) or l < 1 or (pid in ("WFG2", "WFG3") and l % 2):
        raise ProblemError(f"invalid WFG split k={k}, l={l} for M={M}")
    return wfg.make_spec(pid, M, D, k=k)


def _check(spec: ProblemSpec, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != spec.D:
        raise ProblemError(f"{spec.id} expects decision vectors of length {spec.D}, got shape {X.shape}")
    lo, hi = spec.bounds
    if np.any(X < lo) or np.any(X > hi) or not np.all(np.isfinite(X)):
        raise ProblemError(f"decision vector outside the bounds of {spec.id}")
    return X


def evaluate_many(spec: ProblemSpec, X: np.ndarray) -> np.ndarray:
    """Objective vectors for each row of ``X``."""
    return _family(spec.id).evaluate(spec, _check(spec, X))


def evaluate(spec: ProblemSpec, x: np.ndarray) -> np.ndarray:
    return evaluate_many(spec, np.asarray(x, dtype=float)[None, :])[0]


@lru_cache(maxsize=64)
def _front(spec: ProblemSpec, count: int) -> np.ndarray:
    P = _family(spec.id).front(spec, count)
    P.setflags(write=False)
    return P


def pf_sample(spec: ProblemSpec, count: int = PF_COUNT) -> np.ndarray:
    """Deterministic sample of the true Pareto front (about ``count`` rows).

    Curves are sampled evenly in arc length, simplex-shaped fronts on a
    simplex lattice, other surfaces on a parameter grid.
    """
    if count < 2:
        raise ProblemError("count must be at least 2")
    if spec.id.startswith("WFG") and spec.M != 3:
        raise ProblemError("WFG fronts are provided for M = 3 only")
    return _front(spec, count)


def true_ideal(spec: ProblemSpec) -> np.ndarray:
    """Componentwise minimum of the true front."""
    if spec.id not in _NONZERO_IDEAL:
        return np.zeros(spec.M)
    return np.asarray(pf_sample(spec, PF_COUNT).min(axis=0))
