"""Scalarizing functions g(f | W, Z), all minimized.

Every function accepts either a single objective vector or a stack of them
(rows); ``W`` may likewise be one vector or one row per objective vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Decomposition

WEIGHT_FLOOR = 1e-6


@dataclass(frozen=True)
class ScalarizerParams:
    kind: Decomposition = Decomposition.MTCH
    theta: float = 5.0
    weight_floor: float = WEIGHT_FLOOR

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Decomposition(self.kind))
        if not self.theta > 0:
            raise ValueError("theta must be positive")
        if not 0 < self.weight_floor <= 1e-3:
            raise ValueError("weight_floor must lie in (0, 1e-3]")


def _floored(W: np.ndarray, floor: float) -> np.ndarray:
    return np.maximum(W, floor)


def weighted_sum(f, W, Z=None, floor: float = WEIGHT_FLOOR):
    return np.sum(_floored(W, floor) * f, axis=-1)


def tchebycheff(f, W, Z, floor: float = WEIGHT_FLOOR):
    return np.max(_floored(W, floor) * np.abs(f - Z), axis=-1)


def modified_tchebycheff(f, W, Z, floor: float = WEIGHT_FLOOR):
    return np.max((f - Z) / _floored(W, floor), axis=-1)


def pbi_distances(f, W, Z, floor: float = WEIGHT_FLOOR):
    """Return (d1, d2): signed projection length onto the unit weight direction
    and perpendicular distance from that ray."""
    W = _floored(W, floor)
    unit = W / np.linalg.norm(W, axis=-1, keepdims=True)
    diff = f - Z
    d1 = np.sum(diff * unit, axis=-1)
    d2 = np.linalg.norm(diff - d1[..., None] * unit, axis=-1)
    return d1, d2


def pbi(f, W, Z, theta: float = 5.0, floor: float = WEIGHT_FLOOR):
    d1, d2 = pbi_distances(f, W, Z, floor)
    return d1 + theta * d2


def scalarize(f, W, Z, params: ScalarizerParams | None = None):
    """Scalar fitness of ``f`` for subproblem weight ``W`` anchored at ``Z``.

    Raises ValueError on a dimension mismatch or any non-finite input.
    """
    params = params or ScalarizerParams()
    f = np.asarray(f, dtype=float)
    W = np.asarray(W, dtype=float)
    Z = np.asarray(Z, dtype=float)
    M = f.shape[-1]
    if W.shape[-1] != M or Z.shape != (M,):
        raise ValueError(f"dimension mismatch: f {f.shape}, W {W.shape}, Z {Z.shape}")
    if not (np.all(np.isfinite(f)) and np.all(np.isfinite(W)) and np.all(np.isfinite(Z))):
        raise ValueError("non-finite input to scalarize")
    kind = params.kind
    if kind is Decomposition.MTCH:
        out = modified_tchebycheff(f, W, Z, params.weight_floor)
    elif kind is Decomposition.PBI:
        out = pbi(f, W, Z, params.theta, params.weight_floor)
    elif kind is Decomposition.TCH:
        out = tchebycheff(f, W, Z, params.weight_floor)
    else:
        out = weighted_sum(f, W, Z, params.weight_floor)
    return float(out) if np.ndim(out) == 0 else out


def make_scalarizer(params: ScalarizerParams):
    """Unchecked vectorized scalarizer ``g(F, W, Z)`` for the main loop."""
    floor = params.weight_floor
    kind = params.kind
    if kind is Decomposition.MTCH:
        return lambda F, W, Z: modified_tchebycheff(F, W, Z, floor)
    if kind is Decomposition.PBI:
        theta = params.theta
        return lambda F, W, Z: pbi(F, W, Z, theta, floor)
    if kind is Decomposition.TCH:
        return lambda F, W, Z: tchebycheff(F, W, Z, floor)
    return lambda F, W, Z: weighted_sum(F, W, Z, floor)
