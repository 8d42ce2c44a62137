"""Independent reference computations used by the metric tests."""

from itertools import combinations

import numpy as np
from scipy.stats import rankdata

_SPLITS = {}


def exact_ranksum_pvalue(a, b) -> float:
    """Two-sided permutation p-value of the rank-sum statistic (mid-ranks for ties)."""
    n1, n = len(a), len(a) + len(b)
    if (n, n1) not in _SPLITS:
        _SPLITS[n, n1] = np.array(list(combinations(range(n), n1)))
    ranks = rankdata(np.r_[a, b])
    R = ranks[_SPLITS[n, n1]].sum(axis=1)
    mean = n1 * (n + 1) / 2
    obs = ranks[:n1].sum()
    return float(np.mean(np.abs(R - mean) >= abs(obs - mean) - 1e-9))


def exact_symbol(a, b, alpha=0.05, larger_is_better=True) -> str:
    if exact_ranksum_pvalue(a, b) >= alpha:
        return "≈"
    a_larger = np.sum(rankdata(np.r_[a, b])[:len(a)]) > len(a) * (len(a) + len(b) + 1) / 2
    return "+" if a_larger == larger_is_better else "-"


def monte_carlo_hv(points, ref, samples=10**6, rng=None) -> float:
    """Dominated volume inside the box [min(points), ref] by uniform sampling."""
    rng = rng or np.random.default_rng(0)
    points = np.asarray(points, dtype=float)
    lo = points.min(axis=0)
    box = float(np.prod(ref - lo))
    hit = 0
    for start in range(0, samples, 100_000):
        U = lo + rng.random((min(100_000, samples - start), len(ref))) * (ref - lo)
        dom = np.zeros(len(U), dtype=bool)
        for p in points:
            dom |= np.all(U >= p, axis=1)
        hit += int(dom.sum())
    return box * hit / samples


def brute_force_hv(points, ref) -> float:
    """Inclusion-exclusion over all subsets; exponential, for tiny sets only."""
    points = np.asarray(points, dtype=float)
    total = 0.0
    for k in range(1, len(points) + 1):
        for idx in combinations(range(len(points)), k):
            corner = points[list(idx)].max(axis=0)
            total += (-1) ** (k + 1) * float(np.prod(np.clip(ref - corner, 0, None)))
    return total


N8_FIXTURES = [
    # (a, b, larger_is_better)
    (np.arange(8.0), np.arange(8.0), True),
    (np.arange(10.0, 18.0), np.arange(50.0, 58.0), True),
    (np.arange(50.0, 58.0), np.arange(10.0, 18.0), True),
    (np.arange(1.0, 16.0, 2), np.arange(0.0, 16.0, 2), True),
    (np.array([1, 1, 1, 2, 2, 2, 3, 3.0]), np.array([2, 2, 3, 3, 3, 4, 4, 4.0]), True),
    (np.arange(8.0), np.arange(3.0, 11.0), True),
    (np.r_[np.arange(7.0), 100.0], np.arange(7.0, 15.0), True),
    (np.arange(8.0), np.arange(2.0, 10.0), False),
    (np.array([.09, .091, .0905, .0902, .0907, .0903, .0909, .0901]),
     np.array([.21, .23, .19, .22, .20, .24, .18, .215]), True),
    (np.array([.785, .786, .784, .7851, .7849, .7852, .7848, .785]),
     np.array([.043, .05, .038, .061, .047, .052, .04, .044]), False),
]
