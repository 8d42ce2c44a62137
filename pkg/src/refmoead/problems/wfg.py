"""WFG1-WFG4 (Huband, Hingston, Barone, While).

Variable i (1-based) lies in [0, 2i]. With M objectives the first k variables
are position parameters and the remaining l distance parameters; defaults are
k = 2(M - 1) and l = D - k.
"""

from __future__ import annotations

import numpy as np

from .base import ProblemSpec

HALF_PI = np.pi / 2


# -- transformations -------------------------------------------------------------

def _clip01(y):
    return np.clip(y, 0.0, 1.0)


def b_poly(y, alpha):
    return _clip01(y**alpha)


def b_flat(y, A, B, C):
    out = (
        A
        + np.minimum(0.0, np.floor(y - B)) * A * (B - y) / B
        - np.minimum(0.0, np.floor(C - y)) * (1 - A) * (y - C) / (1 - C)
    )
    return _clip01(out)


def s_linear(y, A):
    return _clip01(np.abs(y - A) / np.abs(np.floor(A - y) + A))


def s_multi(y, A, B, C):
    tmp = np.abs(y - C) / (2 * (np.floor(C - y) + C))
    out = (1 + np.cos((4 * A + 2) * np.pi * (0.5 - tmp)) + 4 * B * tmp**2) / (B + 2)
    return _clip01(out)


def r_sum(y, w):
    w = np.asarray(w, dtype=float)
    return _clip01(y @ w / w.sum())


def r_nonsep(y, A):
    n = y.shape[1]
    total = np.zeros(len(y))
    for j in range(n):
        total += y[:, j]
        for k in range(A - 1):
            total += np.abs(y[:, j] - y[:, (j + k + 1) % n])
    denom = (n / A) * np.ceil(A / 2) * (1 + 2 * A - 2 * np.ceil(A / 2))
    return _clip01(total / denom)


# -- shapes (x holds the M-1 position values) ---------------------------------

def _concave(x, M):
    s, c = np.sin(HALF_PI * x), np.cos(HALF_PI * x)
    h = []
    for m in range(1, M + 1):
        v = np.prod(s[:, :M - m], axis=1)
        if m > 1:
            v = v * c[:, M - m]
        h.append(v)
    return np.column_stack(h)


def _convex(x, M):
    s, c = 1 - np.sin(HALF_PI * x), 1 - np.cos(HALF_PI * x)
    h = []
    for m in range(1, M + 1):
        v = np.prod(c[:, :M - m], axis=1)
        if m > 1:
            v = v * s[:, M - m]
        h.append(v)
    return np.column_stack(h)


def _linear(x, M):
    h = []
    for m in range(1, M + 1):
        v = np.prod(x[:, :M - m], axis=1)
        if m > 1:
            v = v * (1 - x[:, M - m])
        h.append(v)
    return np.column_stack(h)


def _mixed(x1, A=5.0, alpha=1.0):
    return (1 - x1 - np.cos(2 * A * np.pi * x1 + HALF_PI) / (2 * A * np.pi)) ** alpha


def _disc(x1, A=5.0, alpha=1.0, beta=1.0):
    return 1 - x1**alpha * np.cos(A * x1**beta * np.pi) ** 2


def _shape(name: str, x: np.ndarray, M: int) -> np.ndarray:
    if name == "WFG1":
        h = _convex(x, M)
        h[:, -1] = _mixed(x[:, 0])
    elif name == "WFG2":
        h = _convex(x, M)
        h[:, -1] = _disc(x[:, 0])
    elif name == "WFG3":
        h = _linear(x, M)
    else:
        h = _concave(x, M)
    return h


def _scales(M: int) -> np.ndarray:
    return 2.0 * np.arange(1, M + 1)


def _degeneracy(name: str, M: int) -> np.ndarray:
    A = np.ones(M - 1)
    if name == "WFG3":
        A[1:] = 0.0
    return A


def position_groups(k: int, M: int) -> list[slice]:
    step = k // (M - 1)
    return [slice(i * step, (i + 1) * step) for i in range(M - 1)]


def _transform(name: str, y: np.ndarray, k: int, M: int) -> np.ndarray:
    D = y.shape[1]
    y = y.copy()
    groups = position_groups(k, M)
    if name == "WFG1":
        y[:, k:] = s_linear(y[:, k:], 0.35)
        y[:, k:] = b_flat(y[:, k:], 0.8, 0.75, 0.85)
        y = b_poly(y, 0.02)
        w = 2.0 * np.arange(1, D + 1)
        t = [r_sum(y[:, g], w[g]) for g in groups]
        t.append(r_sum(y[:, k:], w[k:]))
        return np.column_stack(t)
    if name in ("WFG2", "WFG3"):
        y[:, k:] = s_linear(y[:, k:], 0.35)
        l = D - k
        pairs = [r_nonsep(y[:, k + 2 * i:k + 2 * i + 2], 2) for i in range(l // 2)]
        t = [r_sum(y[:, g], np.ones(g.stop - g.start)) for g in groups]
        t.append(r_sum(np.column_stack(pairs), np.ones(len(pairs))))
        return np.column_stack(t)
    y = s_multi(y, 30, 10, 0.35)
    t = [r_sum(y[:, g], np.ones(g.stop - g.start)) for g in groups]
    t.append(r_sum(y[:, k:], np.ones(D - k)))
    return np.column_stack(t)


def evaluate(spec: ProblemSpec, X: np.ndarray) -> np.ndarray:
    M = spec.M
    k = spec.K
    y = X / spec.bounds[1]
    t = _transform(spec.id, y, k, M)
    A = _degeneracy(spec.id, M)
    t_dist = t[:, -1]
    x = np.maximum(t_dist[:, None], A) * (t[:, :-1] - 0.5) + 0.5
    return t_dist[:, None] + _scales(M) * _shape(spec.id, x, M)


def front(spec: ProblemSpec, count: int) -> np.ndarray:
    """Front points from the shape functions at zero distance.

    At the optimum the distance value is 0, so position values map straight to
    shape parameters (WFG3's degenerate parameters collapse to 0.5).
    """
    M = spec.M
    if M != 3:
        raise ValueError("WFG fronts are provided for M = 3 only")
    if spec.id == "WFG3":
        u = np.linspace(0.0, 1.0, count)
        x = np.column_stack([u, np.full(count, 0.5)])
        return _scales(M) * _shape("WFG3", x, M)
    side = int(np.ceil(np.sqrt(count)))
    u = np.linspace(0.0, 1.0, side)
    if spec.id == "WFG2":
        # f3 depends on x1 alone and (f1, f2) scale up with x1 for fixed x2, so
        # x1 is optimal iff the disc term undercuts its value at every smaller x1
        dense = np.linspace(0.0, 1.0, 200_001)
        d = _disc(dense)
        running = np.minimum.accumulate(np.concatenate([[np.inf], d[:-1]]))
        ok = dense[d < running]
        x1 = ok[np.unique(np.linspace(0, len(ok) - 1, side).round().astype(int))]
    else:
        x1 = u
    a, b = np.meshgrid(x1, u, indexing="ij")
    P = _scales(M) * _shape(spec.id, np.column_stack([a.ravel(), b.ravel()]), M)
    return np.unique(P, axis=0)


def make_spec(name: str, M: int, D: int, k: int | None = None) -> ProblemSpec:
    if k is None:
        k = 2 * (M - 1)
    lo = (0.0,) * D
    hi = tuple(2.0 * i for i in range(1, D + 1))
    return ProblemSpec(name, M, D, lo, hi, K=k, L=D - k)
