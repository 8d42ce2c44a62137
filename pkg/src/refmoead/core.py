"""Shared domain types: solutions, populations, weight sets, run configuration.

Randomness: every run owns one ``numpy.random.Generator`` backed by PCG64,
seeded from ``RunConfig.seed``. PCG64 is a documented, portable generator, so
a seed fully determines a run on any platform with the same numpy release.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations

import numpy as np


class ConfigError(ValueError):
    """Raised for invalid run or experiment configuration."""


class UnsupportedDimensionError(ValueError):
    """Raised when an operation is asked for an unsupported objective count."""


class Decomposition(str, Enum):
    WS = "WS"
    TCH = "TCH"
    MTCH = "MTCH"
    PBI = "PBI"


class Strategy(str, Enum):
    MIN = "Min"
    TRUE_IDEAL = "TrueIdeal"
    DRP = "DRP"
    NORMW = "NormW"


@dataclass(frozen=True)
class Solution:
    x: np.ndarray
    f: np.ndarray


@dataclass
class Population:
    """N solutions stored row-wise; row i is permanently paired with weight i."""

    X: np.ndarray
    F: np.ndarray

    def __post_init__(self) -> None:
        if self.X.ndim != 2 or self.F.ndim != 2 or len(self.X) != len(self.F):
            raise ValueError("X and F must be 2-D arrays with the same number of rows")

    def __len__(self) -> int:
        return len(self.X)

    def __getitem__(self, i: int) -> Solution:
        return Solution(self.X[i].copy(), self.F[i].copy())

    @property
    def members(self) -> list[Solution]:
        return [self[i] for i in range(len(self))]

    def copy(self) -> Population:
        return Population(self.X.copy(), self.F.copy())


@dataclass(frozen=True)
class WeightSet:
    vectors: np.ndarray
    neighborhoods: np.ndarray

    @property
    def N(self) -> int:
        return len(self.vectors)

    @property
    def T(self) -> int:
        return self.neighborhoods.shape[1]


def lattice_size(M: int, H: int) -> int:
    return math.comb(H + M - 1, M - 1)


def lattice_divisions(M: int, N_requested: int) -> int:
    """Smallest H whose simplex lattice holds at least ``N_requested`` points."""
    H = 1
    while lattice_size(M, H) < N_requested:
        H += 1
    return H


def simplex_lattice(M: int, H: int) -> np.ndarray:
    # stars and bars: choose M-1 bar positions among H+M-1 slots
    rows = []
    for bars in combinations(range(H + M - 1), M - 1):
        edges = (-1, *bars, H + M - 1)
        rows.append([edges[k + 1] - edges[k] - 1 for k in range(M)])
    W = np.asarray(rows, dtype=float) / H
    order = np.lexsort(W.T[::-1])
    return W[order]


def generate_weights(M: int, N_requested: int) -> np.ndarray:
    """Das-Dennis weight vectors for ``M`` objectives.

    The lattice resolution is the smallest H with C(H+M-1, M-1) >= N_requested,
    so the returned set may be larger than requested (100 -> 105 for M=3).
    Rows are sorted lexicographically.
    """
    if M not in (2, 3):
        raise UnsupportedDimensionError(f"weight generation supports M in {{2, 3}}, got {M}")
    if N_requested < M:
        raise ConfigError(f"need at least M={M} weight vectors, got {N_requested}")
    return simplex_lattice(M, lattice_divisions(M, N_requested))


def effective_population_size(M: int, N_requested: int) -> int:
    return lattice_size(M, lattice_divisions(M, N_requested))


def build_neighborhoods(vectors: np.ndarray, T: int) -> np.ndarray:
    """Indices of the ``T`` nearest weight vectors per row, ties to the lower index."""
    N = len(vectors)
    if not 1 <= T <= N:
        raise ConfigError(f"neighborhood size T={T} must lie in [1, {N}]")
    diff = vectors[:, None, :] - vectors[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=2))
    return np.argsort(dist, axis=1, kind="stable")[:, :T]


def make_weight_set(M: int, N_requested: int, T: int | None = None) -> WeightSet:
    W = generate_weights(M, N_requested)
    if T is None:
        T = default_neighborhood_size(len(W))
    return WeightSet(W, build_neighborhoods(W, T))


def default_neighborhood_size(N: int) -> int:
    return math.ceil(N / 10)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def rng_next(rng: np.random.Generator) -> float:
    """Next uniform draw in [0, 1)."""
    return float(rng.random())


@dataclass(frozen=True)
class OperatorParams:
    crossover_prob: float = 1.0
    crossover_eta: float = 20.0
    mutation_prob: float | None = None  # None means 1/D
    mutation_eta: float = 20.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise ConfigError("crossover_prob must lie in [0, 1]")
        if self.mutation_prob is not None and not 0.0 <= self.mutation_prob <= 1.0:
            raise ConfigError("mutation_prob must lie in [0, 1]")
        if self.crossover_eta <= 0 or self.mutation_eta <= 0:
            raise ConfigError("distribution indices must be positive")

    def resolved(self, D: int) -> OperatorParams:
        if self.mutation_prob is None:
            return replace(self, mutation_prob=1.0 / D)
        return self


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one run.

    ``N`` is snapped up to the nearest simplex-lattice size on construction, and
    ``T`` defaults to ceil(N/10) of the snapped size.
    """

    problem_id: str
    maxFE: int
    N: int = 100
    M: int | None = None
    D: int | None = None
    T: int | None = None
    decomposition: Decomposition = Decomposition.MTCH
    theta: float = 5.0
    refpoint_strategy: Strategy = Strategy.MIN
    seed: int = 0
    operators: OperatorParams = field(default_factory=OperatorParams)
    record_interval: int = 100
    drp_eps_ini: float = 1.0
    drp_eps_end: float = 0.001
    audit: bool = False

    def __post_init__(self) -> None:
        from .problems import get_problem

        spec = get_problem(self.problem_id, M=self.M, D=self.D)
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("problem_id", spec.id)
        set_("M", spec.M)
        set_("D", spec.D)
        set_("decomposition", Decomposition(self.decomposition))
        set_("refpoint_strategy", Strategy(self.refpoint_strategy))
        if self.N < spec.M:
            raise ConfigError(f"N={self.N} is smaller than M={spec.M}")
        set_("N", effective_population_size(spec.M, self.N))
        if self.T is None:
            set_("T", default_neighborhood_size(self.N))
        if not 2 <= self.T <= self.N:
            raise ConfigError(f"T={self.T} must lie in [2, N={self.N}]")
        if self.maxFE < self.N:
            raise ConfigError(f"maxFE={self.maxFE} must be at least N={self.N}")
        if not self.theta > 0:
            raise ConfigError("theta must be positive")
        if self.record_interval < 1:
            raise ConfigError("record_interval must be >= 1")
        if not 0 < self.drp_eps_end <= self.drp_eps_ini:
            raise ConfigError("DRP schedule needs 0 < eps_end <= eps_ini")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")

    def problem(self):
        from .problems import get_problem

        return get_problem(self.problem_id, M=self.M, D=self.D)

    def to_dict(self) -> dict:
        return {
            "problem_id": self.problem_id,
            "N": self.N,
            "M": self.M,
            "D": self.D,
            "maxFE": self.maxFE,
            "T": self.T,
            "decomposition": self.decomposition.value,
            "theta": self.theta,
            "refpoint_strategy": self.refpoint_strategy.value,
            "seed": self.seed,
            "crossover_prob": self.operators.crossover_prob,
            "crossover_eta": self.operators.crossover_eta,
            "mutation_prob": self.operators.mutation_prob,
            "mutation_eta": self.operators.mutation_eta,
            "record_interval": self.record_interval,
            "drp_eps_ini": self.drp_eps_ini,
            "drp_eps_end": self.drp_eps_end,
        }


@dataclass
class RunResult:
    config: RunConfig
    history: list[tuple[int, float, float]]
    final_population: Population
    wall_time: float
    final_FE: int
    replacement_counts: list[tuple[int, int, int]] | None = None

    @property
    def final_hv(self) -> float:
        return self.history[-1][1]

    @property
    def final_igd(self) -> float:
        return self.history[-1][2]
