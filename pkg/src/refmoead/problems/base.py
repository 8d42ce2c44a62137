from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np


class ProblemError(ValueError):
    """Raised for unknown problems, bad dimensions or out-of-bounds inputs."""


@dataclass(frozen=True)
class ProblemSpec:
    """A benchmark instance.

    ``K``, ``L`` and ``a`` are only meaningful for the IMOP family, where the
    first K variables are position variables and the last L distance variables.
    """

    id: str
    M: int
    D: int
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    K: int | None = None
    L: int | None = None
    a: float | None = None

    def __post_init__(self) -> None:
        if len(self.lower) != self.D or len(self.upper) != self.D:
            raise ProblemError("bounds length must equal D")
        if not all(np.isfinite(self.lower)) or not all(np.isfinite(self.upper)):
            raise ProblemError("bounds must be finite")
        if self.K is not None and self.K + (self.L or 0) != self.D:
            raise ProblemError("IMOP problems need D = K + L")
        if self.a is not None and not self.a > 0:
            raise ProblemError("IMOP exponent a must be positive")

    @cached_property
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = np.array(self.lower), np.array(self.upper)
        lo.setflags(write=False)
        hi.setflags(write=False)
        return lo, hi


def nondominated_mask(F: np.ndarray, chunk: int = 512) -> np.ndarray:
    """Boolean mask of rows of ``F`` not Pareto-dominated by any other row.

    Exact duplicates are all kept.
    """
    F = np.asarray(F, dtype=float)
    n = len(F)
    keep = np.ones(n, dtype=bool)
    for start in range(0, n, chunk):
        block = F[start:start + chunk]
        le = np.all(F[None, :, :] <= block[:, None, :], axis=2)
        lt = np.any(F[None, :, :] < block[:, None, :], axis=2)
        keep[start:start + chunk] = ~np.any(le & lt, axis=1)
    return keep


def arc_length_resample(curve: Callable[[np.ndarray], np.ndarray], count: int,
                        dense: int = 200_001) -> np.ndarray:
    """Evaluate ``curve`` (parameter in [0, 1]) at ``count`` parameters evenly
    spaced in arc length, endpoints included."""
    t = np.linspace(0.0, 1.0, dense)
    P = curve(t)
    seg = np.linalg.norm(np.diff(P, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, s[-1], count)
    t_new = np.interp(targets, s, t)
    t_new[0], t_new[-1] = 0.0, 1.0
    return curve(t_new)


def pick_by_arc_length(P: np.ndarray, count: int, gap: float) -> np.ndarray:
    """Pick ~``count`` points from an ordered dense polyline, evenly in length.

    Steps longer than ``gap`` are treated as breaks between pieces and add no length.
    """
    seg = np.linalg.norm(np.diff(P, axis=0), axis=1)
    seg[seg > gap] = 0.0
    s = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, s[-1], count)
    idx = np.unique(np.clip(np.searchsorted(s, targets), 0, len(P) - 1))
    return P[idx]


def grid_2d(side: int) -> tuple[np.ndarray, np.ndarray]:
    u = np.linspace(0.0, 1.0, side)
    a, b = np.meshgrid(u, u, indexing="ij")
    return a.ravel(), b.ravel()


def filtered_surface(surface: Callable[[np.ndarray, np.ndarray], np.ndarray | None],
                     count: int) -> np.ndarray:
    """Sample a 2-parameter surface on a grid sized so that roughly ``count``
    points survive the surface's own filter (``surface`` returns the kept rows)."""
    side = max(int(np.ceil(np.sqrt(count))), 2)
    P = surface(*grid_2d(side))
    if 0 < len(P) < 0.9 * count:
        side = int(np.ceil(side * np.sqrt(count / len(P))))
        P = surface(*grid_2d(side))
    return P
