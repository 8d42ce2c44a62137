"""DTLZ1-DTLZ4 (Deb, Thiele, Laumanns, Zitzler), all variables in [0, 1]."""

from __future__ import annotations

import numpy as np

from ..core import lattice_divisions, simplex_lattice
from .base import ProblemSpec

HALF_PI = np.pi / 2


def _rastrigin_g(Xd: np.ndarray) -> np.ndarray:
    k = Xd.shape[1]
    return 100 * (k + np.sum((Xd - 0.5) ** 2 - np.cos(20 * np.pi * (Xd - 0.5)), axis=1))


def _sphere_g(Xd: np.ndarray) -> np.ndarray:
    return np.sum((Xd - 0.5) ** 2, axis=1)


def _linear(P: np.ndarray, g: np.ndarray, M: int) -> np.ndarray:
    n = len(P)
    F = np.empty((n, M))
    for m in range(M):
        f = 0.5 * (1 + g)
        f = f * np.prod(P[:, :M - 1 - m], axis=1)
        if m > 0:
            f = f * (1 - P[:, M - 1 - m])
        F[:, m] = f
    return F


def _spherical(P: np.ndarray, g: np.ndarray, M: int) -> np.ndarray:
    n = len(P)
    F = np.empty((n, M))
    c = np.cos(HALF_PI * P)
    s = np.sin(HALF_PI * P)
    for m in range(M):
        f = (1 + g) * np.prod(c[:, :M - 1 - m], axis=1)
        if m > 0:
            f = f * s[:, M - 1 - m]
        F[:, m] = f
    return F


def evaluate(spec: ProblemSpec, X: np.ndarray) -> np.ndarray:
    M = spec.M
    P, Xd = X[:, :M - 1], X[:, M - 1:]
    n = spec.id
    if n == "DTLZ1":
        return _linear(P, _rastrigin_g(Xd), M)
    if n == "DTLZ2":
        return _spherical(P, _sphere_g(Xd), M)
    if n == "DTLZ3":
        return _spherical(P, _rastrigin_g(Xd), M)
    return _spherical(P**100, _sphere_g(Xd), M)


def front(spec: ProblemSpec, count: int) -> np.ndarray:
    W = simplex_lattice(spec.M, lattice_divisions(spec.M, count))
    if spec.id == "DTLZ1":
        return W / 2
    return W / np.linalg.norm(W, axis=1, keepdims=True)


def default_D(name: str, M: int) -> int:
    return M + (4 if name == "DTLZ1" else 9)
