"""The MOEA/D main loop with a pluggable reference-point strategy."""

from __future__ import annotations

import time
from functools import lru_cache

import numpy as np

from . import refpoint
from .core import (
    Population,
    RunConfig,
    RunResult,
    Strategy,
    make_rng,
    make_weight_set,
)
from .decomposition import ScalarizerParams, make_scalarizer
from .metrics import MetricContext, hypervolume, igd
from .operators import make_offspring, select_parents
from .problems import ProblemSpec, evaluate, evaluate_many, true_ideal


class RunError(RuntimeError):
    """A run aborted, e.g. because an objective evaluated to a non-finite value."""


class AuditNotEnabled(RuntimeError):
    pass


@lru_cache(maxsize=None)
def metric_context(spec: ProblemSpec) -> MetricContext:
    return MetricContext.for_problem(spec)


def moead_run(config: RunConfig, ctx: MetricContext | None = None) -> RunResult:
    """Run MOEA/D for ``config.maxFE`` evaluations.

    Subproblems are visited cyclically; each visit breeds one child from two
    neighbors, updates the reference state, draws one reference point and lets
    the child replace every neighbor it strictly improves on. A sweep in
    progress when the budget runs out is finished, so the final FE count lies in
    [maxFE, maxFE + N). Metrics are recorded after initialization, every
    ``record_interval`` evaluations, and at the end.
    """
    t0 = time.perf_counter()
    spec = config.problem()
    ctx = ctx or metric_context(spec)
    rng = make_rng(config.seed)
    ws = make_weight_set(spec.M, config.N, config.T)
    W, B = ws.vectors, ws.neighborhoods
    N = ws.N
    bounds = spec.bounds
    lower, upper = bounds
    ops = config.operators.resolved(spec.D)
    g = make_scalarizer(ScalarizerParams(config.decomposition, config.theta))

    X = lower + rng.random((N, spec.D)) * (upper - lower)
    F = evaluate_many(spec, X)
    if not np.all(np.isfinite(F)):
        raise RunError(f"{spec.id}: non-finite objective in the initial population")
    FE = N

    ideal = true_ideal(spec) if config.refpoint_strategy is Strategy.TRUE_IDEAL else None
    state = refpoint.init_state(
        config.refpoint_strategy, F, config.maxFE, ideal,
        config.drp_eps_ini, config.drp_eps_end,
    )

    history: list[tuple[int, float, float]] = []

    def snapshot() -> None:
        history.append((FE, hypervolume(F, ctx), igd(F, ctx)))

    snapshot()
    audit: list[tuple[int, int, int]] | None = [] if config.audit else None
    interval = config.record_interval
    generation = 0
    while FE < config.maxFE:
        generation += 1
        replaced = compared = 0
        for i in range(N):
            nb = B[i]
            p1, p2 = select_parents(nb, rng)
            y = make_offspring(X[p1], X[p2], bounds, ops, rng)
            fy = evaluate(spec, y)
            FE += 1
            if not np.all(np.isfinite(fy)):
                raise RunError(f"{spec.id}: non-finite objective at FE={FE} for x={y.tolist()}")
            refpoint.observe(state, fy)
            Z = refpoint.select_z(state, FE, i, W[i], rng)
            Wn = W[nb]
            better = g(fy, Wn, Z) < g(F[nb], Wn, Z)
            if better.any():
                idx = nb[better]
                X[idx] = y
                F[idx] = fy
                replaced += len(idx)
            compared += len(nb)
            if FE % interval == 0:
                snapshot()
        if audit is not None:
            audit.append((generation, replaced, compared))
    if history[-1][0] != FE:
        snapshot()

    return RunResult(
        config=config,
        history=history,
        final_population=Population(X, F),
        wall_time=time.perf_counter() - t0,
        final_FE=FE,
        replacement_counts=audit,
    )


def replacement_count_audit(result: RunResult) -> list[tuple[int, int, int]]:
    """Per-generation (generation, replacements, comparisons) of an audited run."""
    if result.replacement_counts is None:
        raise AuditNotEnabled("run was not recorded with audit=True")
    return list(result.replacement_counts)


def replacement_rate(result: RunResult, last_generations: int) -> float:
    rows = replacement_count_audit(result)[-last_generations:]
    compared = sum(r[2] for r in rows)
    return sum(r[1] for r in rows) / compared if compared else 0.0
