"""Quality indicators (HV, IGD) and the rank-sum comparison used in summaries."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import rankdata

from .problems import ProblemSpec, pf_sample, true_ideal

HV_REF = 1.1


@dataclass(frozen=True)
class MetricContext:
    """Normalization data for one problem.

    HV is computed on (p - ideal) / (nadir - ideal) against ``hv_ref`` and divided
    by the reference box volume; IGD uses the raw front sample.
    """

    pf_reference: np.ndarray
    ideal: np.ndarray
    nadir: np.ndarray
    hv_ref: np.ndarray

    def __post_init__(self) -> None:
        if len(self.pf_reference) == 0:
            raise ValueError("empty reference front")
        if not np.all(self.ideal < self.nadir):
            raise ValueError("ideal must be strictly below nadir in every objective")

    @classmethod
    def for_problem(cls, spec: ProblemSpec) -> MetricContext:
        P = pf_sample(spec)
        ideal = np.minimum(true_ideal(spec), P.min(axis=0))
        return cls(P, ideal, P.max(axis=0), np.full(spec.M, HV_REF))

    @classmethod
    def from_front(cls, P: np.ndarray, ref: float = HV_REF) -> MetricContext:
        P = np.asarray(P, dtype=float)
        return cls(P, P.min(axis=0), P.max(axis=0), np.full(P.shape[1], ref))


def hv_2d(points: np.ndarray, ref: np.ndarray) -> float:
    """Exact area dominated by ``points`` (already filtered to dominate ``ref``)."""
    if len(points) == 0:
        return 0.0
    P = points[np.lexsort((points[:, 1], points[:, 0]))]
    area = 0.0
    best_y = ref[1]
    for x, y in P:
        if y < best_y:
            area += (ref[0] - x) * (best_y - y)
            best_y = y
    return area


def hv_3d(points: np.ndarray, ref: np.ndarray) -> float:
    """Exact volume by slicing along the third objective."""
    if len(points) == 0:
        return 0.0
    P = points[np.argsort(points[:, 2], kind="stable")]
    z = np.append(P[:, 2], ref[2])
    vol = 0.0
    for k in range(len(P)):
        depth = z[k + 1] - z[k]
        if depth > 0:
            vol += hv_2d(P[:k + 1, :2], ref[:2]) * depth
    return vol


def hypervolume_raw(points: np.ndarray, ref: np.ndarray) -> float:
    """Dominated hypervolume of ``points`` w.r.t. ``ref`` (minimization, M in {2, 3})."""
    points = np.asarray(points, dtype=float)
    ref = np.asarray(ref, dtype=float)
    M = len(ref)
    if M not in (2, 3):
        raise ValueError(f"hypervolume supports M in {{2, 3}}, got {M}")
    if len(points) == 0:
        return 0.0
    points = points[np.all(points < ref, axis=1)]
    return hv_2d(points, ref) if M == 2 else hv_3d(points, ref)


def hypervolume(points: np.ndarray, ctx: MetricContext) -> float:
    """Normalized HV in [0, 1]: box volume fraction of the reference box."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] not in (2, 3):
        raise ValueError(f"hypervolume supports M in {{2, 3}}, got {points.shape[1]}")
    Pn = (points - ctx.ideal) / (ctx.nadir - ctx.ideal)
    return hypervolume_raw(Pn, ctx.hv_ref) / float(np.prod(ctx.hv_ref))


def igd(points: np.ndarray, ctx: MetricContext) -> float:
    """Mean distance from each reference-front point to its nearest member of ``points``."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.size == 0:
        raise ValueError("IGD of an empty set is undefined")
    d, _ = cKDTree(points).query(ctx.pf_reference)
    return float(np.mean(d))


def rank_sum_z(a, b) -> float:
    """Wilcoxon rank-sum z statistic for ``a`` vs ``b`` (tie-corrected normal
    approximation, no continuity correction). Positive when ``a`` tends larger."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n1, n2 = len(a), len(b)
    ranks = rankdata(np.concatenate([a, b]))
    R1 = ranks[:n1].sum()
    n = n1 + n2
    mean = n1 * (n + 1) / 2
    _, counts = np.unique(ranks, return_counts=True)
    tie = np.sum(counts**3 - counts)
    var = n1 * n2 / 12 * ((n + 1) - tie / (n * (n - 1)))
    if var <= 0:
        return 0.0
    return (R1 - mean) / math.sqrt(var)


def rank_sum_pvalue(a, b) -> float:
    z = rank_sum_z(a, b)
    return math.erfc(abs(z) / math.sqrt(2.0))


def rank_sum_compare(a, b, alpha: float = 0.05, larger_is_better: bool = True) -> str:
    """'+' if ``a`` is significantly better than ``b``, '-' if worse, '≈' otherwise."""
    if len(a) != len(b):
        raise ValueError("samples must have equal length")
    if len(a) < 5:
        raise ValueError("rank-sum comparison needs at least 5 samples per side")
    z = rank_sum_z(a, b)
    if math.erfc(abs(z) / math.sqrt(2.0)) >= alpha:
        return "≈"
    a_larger = z > 0
    return "+" if a_larger == larger_is_better else "-"
