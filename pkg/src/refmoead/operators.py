"""Mating selection and real-coded variation: SBX crossover and polynomial mutation."""

from __future__ import annotations

import numpy as np

from .core import OperatorParams

UNCROSSED_VAR_PROB = 0.5


def select_parents(nb: np.ndarray, rng: np.random.Generator) -> tuple[int, int]:
    """Two distinct members of the neighborhood, uniformly at random."""
    if len(nb) < 2:
        raise ValueError("parent selection needs a neighborhood of at least 2")
    n = len(nb)
    a = int(rng.integers(n))
    b = int(rng.integers(n - 1))
    if b >= a:
        b += 1
    return int(nb[a]), int(nb[b])


def sbx_crossover(x1: np.ndarray, x2: np.ndarray, bounds: tuple[np.ndarray, np.ndarray],
                  params: OperatorParams, rng: np.random.Generator) -> np.ndarray:
    """One simulated-binary-crossover child, clamped to ``bounds``.

    With probability ``1 - crossover_prob`` the child is a copy of ``x1``.
    Otherwise every variable draws u ~ U[0, 1) and the spread factor
    beta = (2u)^(1/(eta+1)) for u <= 0.5, else (1/(2(1-u)))^(1/(eta+1));
    the child takes one of the two symmetric offspring values at random, and
    each variable is left at ``x1`` with probability ``UNCROSSED_VAR_PROB``.
    """
    lower, upper = bounds
    if rng.random() >= params.crossover_prob:
        return np.clip(x1, lower, upper)
    n = len(x1)
    u = rng.random(n)
    first = sbx_child(x1, x2, u, params.crossover_eta)
    flip = rng.random(n) < 0.5
    child = np.where(flip, x1 + x2 - first, first)
    keep = rng.random(n) < UNCROSSED_VAR_PROB
    child = np.where(keep, x1, child)
    return np.clip(child, lower, upper)


def sbx_child(x1: np.ndarray, x2: np.ndarray, u: np.ndarray, eta: float) -> np.ndarray:
    """First child of the SBX pair for uniform draws ``u``; the second is x1 + x2 - first."""
    e = 1.0 / (eta + 1.0)
    beta = np.where(u <= 0.5, (2.0 * u) ** e, (1.0 / (2.0 * (1.0 - u))) ** e)
    return 0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2)


def polynomial_mutation(x: np.ndarray, bounds: tuple[np.ndarray, np.ndarray],
                        params: OperatorParams, rng: np.random.Generator) -> np.ndarray:
    """Bounded polynomial mutation (Deb & Goyal), each variable independently
    with probability ``mutation_prob``."""
    lower, upper = bounds
    prob = params.mutation_prob if params.mutation_prob is not None else 1.0 / len(x)
    mask = rng.random(len(x)) < prob
    if not mask.any():
        return x.copy()
    u = rng.random(len(x))
    y = x.copy()
    lo, hi, xm, um = lower[mask], upper[mask], x[mask], u[mask]
    span = hi - lo
    d1 = (xm - lo) / span
    d2 = (hi - xm) / span
    e = 1.0 / (params.mutation_eta + 1.0)
    left = um <= 0.5
    delta = np.where(
        left,
        (2 * um + (1 - 2 * um) * (1 - d1) ** (params.mutation_eta + 1)) ** e - 1,
        1 - (2 * (1 - um) + 2 * (um - 0.5) * (1 - d2) ** (params.mutation_eta + 1)) ** e,
    )
    y[mask] = xm + delta * span
    return np.clip(y, lower, upper)


def make_offspring(x1: np.ndarray, x2: np.ndarray, bounds, params: OperatorParams,
                   rng: np.random.Generator) -> np.ndarray:
    child = sbx_crossover(x1, x2, bounds, params, rng)
    return polynomial_mutation(child, bounds, params, rng)
