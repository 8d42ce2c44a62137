"""Reference-point strategies.

Each run holds one :class:`RefPointState`. The main loop calls :func:`observe`
after every evaluation and :func:`select_z` once per offspring; the returned
point anchors every neighbor comparison made for that offspring.

* ``Min``: the running componentwise minimum ``Z_m``.
* ``TrueIdeal``: the analytic ideal point of the problem, fixed for the run.
* ``DRP``: ``Z_m - eps(FE)``, with eps decaying linearly from ``eps_ini`` at
  FE = 1 to ``eps_end`` at FE = maxFE.
* ``NormW``: with probability ``1 - pro`` the point ``Z_w`` where the sphere of
  radius ``||Z_m||`` about the origin meets the ray of the current weight;
  otherwise the origin while ``pro < 1/2`` and ``Z_m`` after. ``pro`` is the
  normal CDF of FE with mean maxFE/2 and standard deviation maxFE/10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Strategy, rng_next


@dataclass
class RefPointState:
    strategy: Strategy
    Z_m: np.ndarray
    Z_0: np.ndarray
    Z_ideal: np.ndarray | None
    maxFE: int
    mu: float
    sigma: float
    drp_eps_ini: float = 1.0
    drp_eps_end: float = 0.001


def init_state(strategy: Strategy | str, objectives: np.ndarray, maxFE: int,
               true_ideal: np.ndarray | None = None, drp_eps_ini: float = 1.0,
               drp_eps_end: float = 0.001) -> RefPointState:
    strategy = Strategy(strategy)
    objectives = np.atleast_2d(np.asarray(objectives, dtype=float))
    if objectives.size == 0:
        raise ValueError("cannot initialize a reference point from an empty population")
    if strategy is Strategy.TRUE_IDEAL and true_ideal is None:
        raise ValueError("TrueIdeal needs the problem's ideal point")
    M = objectives.shape[1]
    mu = maxFE / 2
    return RefPointState(
        strategy=strategy,
        Z_m=objectives.min(axis=0),
        Z_0=np.zeros(M),
        Z_ideal=None if true_ideal is None else np.asarray(true_ideal, dtype=float).copy(),
        maxFE=maxFE,
        mu=mu,
        sigma=mu / 5,
        drp_eps_ini=drp_eps_ini,
        drp_eps_end=drp_eps_end,
    )


def observe(state: RefPointState, f: np.ndarray) -> RefPointState:
    f = np.asarray(f, dtype=float)
    if f.shape != state.Z_m.shape:
        raise ValueError(f"objective vector of shape {f.shape}, expected {state.Z_m.shape}")
    if not np.all(np.isfinite(f)):
        raise ValueError("non-finite objective vector")
    np.minimum(state.Z_m, f, out=state.Z_m)
    return state


def gauss_cdf(y: float, mu: float, sigma: float) -> float:
    """Normal CDF via ``math.erfc`` (libm, accurate to about 1e-15)."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    return 0.5 * math.erfc(-(y - mu) / (sigma * math.sqrt(2.0)))


def z_w(Z_m: np.ndarray, W: np.ndarray) -> np.ndarray:
    W = np.asarray(W, dtype=float)
    norm_w = float(np.linalg.norm(W))
    if norm_w == 0.0:
        raise ValueError("weight vector must be nonzero")
    return float(np.linalg.norm(Z_m)) * W / norm_w


def drp_epsilon(FE: int, maxFE: int, eps_ini: float = 1.0, eps_end: float = 0.001) -> float:
    if maxFE <= 1:
        return eps_end
    return (eps_ini - eps_end) * (maxFE - FE) / (maxFE - 1) + eps_end


def normw_choice(pro: float, u: float) -> str:
    """Which point the NormW schedule picks for draw ``u``: 'w', '0' or 'm'."""
    if u > pro:
        return "w"
    return "0" if pro < 0.5 else "m"


def select_z(state: RefPointState, FE: int, i: int, W_i: np.ndarray,
             rng: np.random.Generator) -> np.ndarray:
    """Reference point for the offspring produced at evaluation ``FE`` on
    subproblem ``i``. Only NormW consumes a random draw."""
    s = state.strategy
    if s is Strategy.MIN:
        return state.Z_m.copy()
    if s is Strategy.TRUE_IDEAL:
        return state.Z_ideal.copy()
    if s is Strategy.DRP:
        return state.Z_m - drp_epsilon(FE, state.maxFE, state.drp_eps_ini, state.drp_eps_end)
    if s is Strategy.NORMW:
        pro = gauss_cdf(FE, state.mu, state.sigma)
        pick = normw_choice(pro, rng_next(rng))
        if pick == "w":
            return z_w(state.Z_m, W_i)
        return state.Z_0.copy() if pick == "0" else state.Z_m.copy()
    raise ValueError(f"unknown strategy {s!r}")
