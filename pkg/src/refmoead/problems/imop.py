"""IMOP1-IMOP8: problems with strongly nonuniform position mappings.

All variables lie in [0, 1]. The first K variables are position variables,
the remaining L distance variables contribute g = sum((x - 0.5)^2), which is
zero on the Pareto set. Defaults follow the common benchmark settings:
K = 5, a1 = a2 = 0.05, a3 = 10.
"""

from __future__ import annotations

import numpy as np

from .base import (
    ProblemSpec,
    arc_length_resample,
    filtered_surface,
    pick_by_arc_length,
)

A3 = 10.0
HALF_PI = np.pi / 2


def _g(spec: ProblemSpec, X: np.ndarray) -> np.ndarray:
    return np.sum((X[:, spec.K:] - 0.5) ** 2, axis=1)


def _y(spec: ProblemSpec, X: np.ndarray) -> np.ndarray:
    return np.mean(X[:, :spec.K], axis=1) ** spec.a


def _y_pair(spec: ProblemSpec, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    y1 = np.mean(X[:, 0:spec.K:2], axis=1) ** spec.a
    y2 = np.mean(X[:, 1:spec.K:2], axis=1) ** A3
    return y1, y2


# -- objective maps on (position parameters, g) -------------------------------

def _imop1_map(y, g):
    return np.column_stack([g + np.cos(HALF_PI * y) ** 8, g + np.sin(HALF_PI * y) ** 8])


def _imop2_map(y, g):
    # sqrt(cos(pi/2 y)); clip guards the -1e-17 that cos(pi/2) rounds to
    c = np.clip(np.cos(HALF_PI * y), 0.0, None)
    s = np.clip(np.sin(HALF_PI * y), 0.0, None)
    return np.column_stack([g + np.sqrt(c), g + np.sqrt(s)])


def _imop3_map(y, g):
    return np.column_stack([g + 1 + np.cos(10 * np.pi * y) / 5 - y, g + y])


def _imop4_map(y, g):
    return (1 + g)[:, None] * np.column_stack([y, y + np.sin(10 * np.pi * y) / 10, 1 - y])


def _imop5_map(y1, y2, g):
    sector = np.pi / 4 * np.ceil(8 * y1)
    h1 = 0.4 * np.cos(sector) + 0.1 * y2 * np.cos(16 * np.pi * y1)
    h2 = 0.4 * np.sin(sector) + 0.1 * y2 * np.sin(16 * np.pi * y1)
    return np.column_stack([g + h1, g + h2, g + 0.5 - h1 - h2])


def _imop6_r(y1, y2):
    return np.maximum(0.0, np.minimum(np.sin(3 * np.pi * y1) ** 2, np.sin(3 * np.pi * y2) ** 2) - 0.05)


def _imop6_map(y1, y2, g):
    r = np.ceil(_imop6_r(y1, y2))
    return np.column_stack([(1 + g) * y1 + r, (1 + g) * y2 + r, (0.5 + g) * (2 - y1 - y2) + r])


def _imop7_h(y1, y2, g):
    c1 = np.cos(HALF_PI * y1)
    return (1 + g)[:, None] * np.column_stack(
        [c1 * np.cos(HALF_PI * y2), c1 * np.sin(HALF_PI * y2), np.sin(HALF_PI * y1)]
    )


def _imop7_r(h):
    h1, h2, h3 = h.T
    return np.minimum(np.minimum(np.abs(h1 - h2), np.abs(h2 - h3)), np.abs(h3 - h1))


def _imop7_map(y1, y2, g):
    h = _imop7_h(y1, y2, g)
    return h + 10 * np.maximum(0.0, _imop7_r(h) - 0.1)[:, None]


def _imop8_wave(y):
    return y * (1 + np.sin(19 * np.pi * y))


def _imop8_map(y1, y2, g):
    gp = 1 + g
    f3 = gp * (3 - (_imop8_wave(y1) + _imop8_wave(y2)) / gp)
    return np.column_stack([y1, y2, f3])


# -- evaluation ----------------------------------------------------------------

def evaluate(spec: ProblemSpec, X: np.ndarray) -> np.ndarray:
    g = _g(spec, X)
    n = int(spec.id[4:])
    if n <= 4:
        y = _y(spec, X)
        return {1: _imop1_map, 2: _imop2_map, 3: _imop3_map, 4: _imop4_map}[n](y, g)
    y1, y2 = _y_pair(spec, X)
    return {5: _imop5_map, 6: _imop6_map, 7: _imop7_map, 8: _imop8_map}[n](y1, y2, g)


# -- Pareto fronts ---------------------------------------------------------------

def _zeros(n):
    return np.zeros(n)


def _prefix_max_mask(v: np.ndarray) -> np.ndarray:
    """Grid entries strictly larger than every earlier entry."""
    running = np.maximum.accumulate(np.concatenate([[-np.inf], v[:-1]]))
    return v > running


def front(spec: ProblemSpec, count: int) -> np.ndarray:
    n = int(spec.id[4:])
    if n == 1:
        return arc_length_resample(lambda t: _imop1_map(t, _zeros(len(t))), count)
    if n == 2:
        return arc_length_resample(
            lambda t: np.column_stack([t, (1 - t**4) ** 0.25]), count
        )
    if n == 3:
        t = np.linspace(0.0, 1.0, 400_001)
        P = _imop3_map(t, _zeros(len(t)))
        # f2 = y is increasing, so a point is optimal iff its f1 undercuts all earlier ones
        running = np.minimum.accumulate(np.concatenate([[np.inf], P[:-1, 0]]))
        P = P[P[:, 0] < running]
        return pick_by_arc_length(P, count, gap=1e-2)
    if n == 4:
        return arc_length_resample(lambda t: _imop4_map(t, _zeros(len(t))), count)
    if n == 5:
        return filtered_surface(lambda a, b: _imop5_map(a, b, _zeros(len(a))), count)
    if n == 6:
        def surface(a, b):
            keep = _imop6_r(a, b) == 0
            return _imop6_map(a[keep], b[keep], _zeros(int(keep.sum())))
        return filtered_surface(surface, count)
    if n == 7:
        def surface(a, b):
            h = _imop7_h(a, b, _zeros(len(a)))
            return h[_imop7_r(h) <= 0.1]
        return filtered_surface(surface, count)

    # f3 is separable in (y1, y2): a point is optimal iff both coordinates are
    # strict prefix maxima of the wave term, so the front is a product set
    u = np.linspace(0.0, 1.0, 200_001)
    v = u[_prefix_max_mask(_imop8_wave(u))]
    side = int(np.ceil(np.sqrt(count)))
    v = v[np.unique(np.linspace(0, len(v) - 1, side).round().astype(int))]
    a, b = np.meshgrid(v, v, indexing="ij")
    a, b = a.ravel(), b.ravel()
    return _imop8_map(a, b, _zeros(len(a)))


def make_spec(name: str, M: int, D: int, K: int = 5, a: float = 0.05) -> ProblemSpec:
    lo, hi = (0.0,) * D, (1.0,) * D
    return ProblemSpec(name, M, D, lo, hi, K=K, L=D - K, a=a)
