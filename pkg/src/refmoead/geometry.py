"""Numerical checks of the fitness-ordering results on the IMOP2 front.

The front is f2 = (1 - f1^4)^(1/4). A scenario places an incumbent F and a
newcomer G on the front (G to the right of F), a reference point Z and a weight
direction at angle ``alpha`` from the f1 axis, then compares the scalarized
fitness of F and G.

For the min-style reference point Z = (Z1, G2):

1. PBI, k_OW > k_ZF and |k_G| <= theta            -> g(F) < g(G)
2. PBI, k_OW <= k_ZF and |k_G| <= min(sin^3 a cos a / 2, cot a / 2) -> g(F) < g(G)
3. M-TCH, k_OW > k_ZF                                -> g(F) < g(G)
4. M-TCH, k_OW <= k_ZF and |k_G| <= tan a           -> g(F) < g(G)

For the weight-guided point Z_W = ||(Z1, G2)|| * W/||W||:

5. PBI, tan a >= 1/theta                            -> g(G) < g(F)
6. M-TCH, tan a <= G2/G1                            -> g(G) < g(F)

The sweeps only try to falsify these claims by sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma

from .decomposition import modified_tchebycheff, pbi
from .refpoint import z_w

THEOREMS = (1, 2, 3, 4, 5, 6)
TIE_TOL = 1e-12


@dataclass(frozen=True)
class SweepRanges:
    F1: tuple[float, float] = (0.0, 0.2)
    G1_offset: tuple[float, float] = (0.0, 0.3)
    alpha: tuple[float, float] = (0.0, math.pi / 2)
    theta: float = 5.0


@dataclass(frozen=True)
class GeometryScenario:
    F: tuple[float, float]
    G: tuple[float, float]
    Z: tuple[float, float]
    W: tuple[float, float]
    alpha: float
    theta: float
    k_G: float


@dataclass(frozen=True)
class TheoremCheck:
    assumption_holds: bool
    inequality_holds: bool
    tie: bool = False


@dataclass(frozen=True)
class SweepReport:
    theorem: int
    attempted: int
    hypothesis_pass: int
    ties: int
    violations: int

    @property
    def violation_rate(self) -> float:
        n = self.hypothesis_pass - self.ties
        return self.violations / n if n else 0.0


def pf_point(f1: float) -> tuple[float, float]:
    if not 0.0 <= f1 <= 1.0:
        raise ValueError(f"f1 must lie in [0, 1], got {f1}")
    return (f1, (1.0 - f1**4) ** 0.25)


def slope_kg(G1):
    """|df2/df1| of the front at f1 = G1: G1^3 / (1 - G1^4)^(3/4)."""
    G1 = np.asarray(G1, dtype=float)
    if np.any(G1 < 0) or np.any(G1 >= 1):
        raise ValueError("slope is defined for G1 in [0, 1)")
    out = G1**3 / (1.0 - G1**4) ** 0.75
    return float(out) if out.ndim == 0 else out


def pf_area() -> float:
    """Area under the front, by adaptive quadrature."""
    val, _ = quad(lambda t: (1.0 - t**4) ** 0.25, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12)
    return val


def pf_area_closed_form() -> float:
    return 2.0 / math.sqrt(math.pi) * gamma(1.25) ** 2


def weight_from_angle(alpha):
    c, s = np.cos(alpha), np.sin(alpha)
    return np.stack([c, s], axis=-1) / (c + s)[..., None]


def make_scenario(F1: float, G1: float, Z1: float, alpha: float, theta: float = 5.0,
                  weight_guided: bool = False) -> GeometryScenario:
    """Scenario with Z = (Z1, G2), or its projection onto the weight ray when
    ``weight_guided`` (the setting of theorems 5 and 6)."""
    F = pf_point(F1)
    G = pf_point(G1)
    W = tuple(weight_from_angle(alpha))
    Z = (Z1, G[1])
    if weight_guided:
        Z = tuple(z_w(np.array(Z), np.array(W)))
    return GeometryScenario(F, G, Z, W, alpha, theta, slope_kg(G1))


def _validate(s: GeometryScenario, theorem: int) -> None:
    F1, F2 = s.F
    G1, G2 = s.G
    ok = (
        abs(F2 - (1 - F1**4) ** 0.25) < 1e-12
        and abs(G2 - (1 - G1**4) ** 0.25) < 1e-12
        and G1 > F1 and G2 < F2
        and 0 < s.alpha < math.pi / 2
        and s.theta > 0
    )
    if theorem <= 4:
        ok = ok and 0 <= s.Z[0] <= F1 and s.Z[1] == G2
    if not ok:
        raise ValueError(f"malformed scenario for theorem {theorem}: {s}")


def _hypothesis(theorem: int, F, G, Z, alpha, theta, k_G):
    """Vectorized hypothesis of each theorem; arguments are arrays of shape (n, 2) / (n,)."""
    tan_a = np.tan(alpha)
    with np.errstate(divide="ignore", invalid="ignore"):
        dx = F[:, 0] - Z[:, 0]
        k_ZF = np.where(dx > 0, (F[:, 1] - Z[:, 1]) / np.where(dx > 0, dx, 1.0), np.inf)
    steep = tan_a > k_ZF
    if theorem == 1:
        return steep & (k_G <= theta)
    if theorem == 2:
        bound = np.minimum(0.5 * np.sin(alpha) ** 3 * np.cos(alpha), 0.5 / tan_a)
        return ~steep & (k_G <= bound)
    if theorem == 3:
        return steep
    if theorem == 4:
        return ~steep & (k_G <= tan_a)
    if theorem == 5:
        return tan_a >= 1.0 / theta
    return tan_a <= G[:, 1] / G[:, 0]


def _fitness(theorem: int, P, W, Z, theta):
    if theorem in (1, 2, 5):
        return pbi(P, W, Z, theta)
    return modified_tchebycheff(P, W, Z)


def _claim(theorem: int, gF, gG):
    """(holds, tie): theorems 1-4 claim g(F) < g(G), 5-6 the reverse."""
    tie = np.abs(gF - gG) < TIE_TOL
    holds = gF < gG if theorem <= 4 else gG < gF
    return holds, tie


def check_theorem(theorem: int, scenario: GeometryScenario, mirror: bool = False) -> TheoremCheck:
    """Evaluate one theorem's hypothesis and claimed fitness order on a scenario.

    With ``mirror`` the two objectives are swapped before scoring, which must
    not change the outcome since every scalarizer is symmetric under a joint
    permutation of f, W and Z.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem}")
    _validate(scenario, theorem)
    F = np.array([scenario.F])
    G = np.array([scenario.G])
    Z = np.array([scenario.Z])
    W = np.array([scenario.W])
    alpha = np.array([scenario.alpha])
    hyp = bool(_hypothesis(theorem, F, G, Z, alpha, scenario.theta, np.array([scenario.k_G]))[0])
    if mirror:
        F, G, Z, W = F[:, ::-1], G[:, ::-1], Z[:, ::-1], W[:, ::-1]
    gF = _fitness(theorem, F, W, Z[0], scenario.theta)
    gG = _fitness(theorem, G, W, Z[0], scenario.theta)
    holds, tie = _claim(theorem, gF, gG)
    return TheoremCheck(hyp, bool(holds[0]), bool(tie[0]))


def _sample(rng: np.random.Generator, n: int, ranges: SweepRanges):
    F1 = rng.uniform(*ranges.F1, n)
    G1 = F1 + rng.uniform(*ranges.G1_offset, n)
    Z1 = F1 * rng.random(n)
    alpha = rng.uniform(*ranges.alpha, n)
    interior = (F1 > 0) & (G1 > F1) & (G1 < 1) & (alpha > 0) & (alpha < math.pi / 2)
    return F1[interior], G1[interior], Z1[interior], alpha[interior]


def theorem_sweep(theorem: int, n_samples: int, rng: np.random.Generator,
                  ranges: SweepRanges | None = None, mirror: bool = False,
                  require_w_below_g: bool = False, max_batches: int = 1000) -> SweepReport:
    """Sample scenarios until ``n_samples`` satisfy the theorem's hypothesis and
    count those where the claimed fitness order fails (ties excluded).

    ``require_w_below_g`` additionally keeps only scenarios whose weight ray
    passes below OG (tan a <= G2/G1). It is a diagnostic, off by default: the
    stated hypothesis of theorem 5 does not include it, and without it the PBI
    claim fails whenever the ray passes above G.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem}")
    if n_samples < 1000:
        raise ValueError("a sweep needs at least 1000 samples")
    ranges = ranges or SweepRanges()
    theta = ranges.theta
    attempted = passed = ties = violations = 0
    batch = max(n_samples, 4096)
    for _ in range(max_batches):
        if passed >= n_samples:
            break
        F1, G1, Z1, alpha = _sample(rng, batch, ranges)
        attempted += batch
        F = np.column_stack([F1, (1 - F1**4) ** 0.25])
        G = np.column_stack([G1, (1 - G1**4) ** 0.25])
        Zmin = np.column_stack([Z1, G[:, 1]])
        W = weight_from_angle(alpha)
        if theorem >= 5:
            Z = np.linalg.norm(Zmin, axis=1)[:, None] * W / np.linalg.norm(W, axis=1)[:, None]
        else:
            Z = Zmin
        hyp = _hypothesis(theorem, F, G, Z, alpha, theta, slope_kg(G1))
        if require_w_below_g:
            hyp &= np.tan(alpha) <= G[:, 1] / G[:, 0]
        take = np.flatnonzero(hyp)[: n_samples - passed]
        if len(take) == 0:
            continue
        F, G, Z, W = F[take], G[take], Z[take], W[take]
        if mirror:
            F, G, Z, W = F[:, ::-1], G[:, ::-1], Z[:, ::-1], W[:, ::-1]
        gF = _fitness(theorem, F, W, Z, theta)
        gG = _fitness(theorem, G, W, Z, theta)
        holds, tie = _claim(theorem, gF, gG)
        passed += len(take)
        ties += int(tie.sum())
        violations += int((~holds & ~tie).sum())
    return SweepReport(theorem, attempted, passed, ties, violations)
