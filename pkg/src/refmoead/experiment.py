"""Replicated experiments: config parsing, seeded runs, CSV persistence, summaries.

Layout written under ``output_dir``::

    cells.json                         the resolved cells, in order
    runs/<cell>/rep<r>_history.csv     FE,HV,IGD
    runs/<cell>/rep<r>_population.csv  f1..fM,x1..xD
    summary.csv                        one row per cell, mean/std and rank-sum symbols
    timings.csv                        wall time per replicate (kept out of the summary)

The summary is always rebuilt from the per-run CSVs, so ``summarize`` on an
existing directory reproduces it exactly.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from .core import ConfigError, Decomposition, OperatorParams, RunConfig, RunResult, Strategy
from .metrics import rank_sum_compare
from .moead import moead_run
from .problems import BENCHMARK_PRESETS, get_problem, pf_sample

log = logging.getLogger(__name__)

PLOT_KINDS = ("population_scatter", "metric_trajectory", "pf_overlay")
MIN_RANKSUM_REPLICATES = 5


class ConfigParseError(ValueError):
    """Invalid experiment config; the message names the offending key."""


@dataclass(frozen=True)
class Cell:
    """One (problem, strategy, scalarizer) combination with its run settings.

    ``N``, ``M``, ``D`` and ``maxFE`` default to the problem's preset.
    """

    problem: str
    strategy: Strategy
    scalarizer: Decomposition = Decomposition.MTCH
    N: int | None = None
    M: int | None = None
    D: int | None = None
    maxFE: int | None = None
    T: int | None = None
    theta: float = 5.0
    record_interval: int = 100

    @property
    def label(self) -> str:
        return f"{self.problem}-{self.strategy.value}-{self.scalarizer.value}"

    def run_config(self, seed: int) -> RunConfig:
        N, M, D, maxFE = preset(self.problem)
        return RunConfig(
            problem_id=self.problem,
            maxFE=self.maxFE if self.maxFE is not None else maxFE,
            N=self.N if self.N is not None else N,
            M=self.M if self.M is not None else M,
            D=self.D if self.D is not None else D,
            T=self.T,
            decomposition=self.scalarizer,
            theta=self.theta,
            refpoint_strategy=self.strategy,
            seed=seed,
            operators=OperatorParams(),
            record_interval=self.record_interval,
        )


@dataclass(frozen=True)
class ExperimentSpec:
    cells: tuple[Cell, ...]
    replicates: int = 30
    base_seed: int = 0
    output_dir: Path = Path("results")
    parallelism: int = 1
    baseline: tuple[Strategy, Decomposition] | None = None

    def __post_init__(self) -> None:
        if not self.cells:
            raise ConfigError("an experiment needs at least one cell")
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")
        labels = [c.label for c in self.cells]
        if len(set(labels)) != len(labels):
            raise ConfigError("duplicate cells")
        for c in self.cells:
            c.run_config(self.seed(c, 0))

    @property
    def baseline_key(self) -> tuple[Strategy, Decomposition]:
        if self.baseline is not None:
            return self.baseline
        return self.cells[0].strategy, self.cells[0].scalarizer

    def seed(self, cell: Cell, replicate: int) -> int:
        """base_seed + the first 8 bytes of sha256("<label>:<replicate>"), mod 2^64.

        Depends only on the cell's own label, so adding cells leaves the
        others' seeds unchanged.
        """
        digest = hashlib.sha256(f"{cell.label}:{replicate}".encode()).digest()
        return (self.base_seed + int.from_bytes(digest[:8], "little")) % 2**64


def preset(problem: str) -> tuple[int, int, int, int]:
    """(N, M, D, maxFE) shipped for a benchmark problem."""
    key = problem.upper()
    if key not in BENCHMARK_PRESETS:
        raise ConfigError(f"no preset for problem {problem!r}")
    return BENCHMARK_PRESETS[key]


# -- config parsing ------------------------------------------------------------

_TOP_KEYS = {"cells", "grid", "replicates", "base_seed", "output_dir", "parallelism",
             "baseline", "defaults"}
_CELL_TYPES: dict[str, type] = {
    "problem": str, "strategy": str, "scalarizer": str, "N": int, "M": int, "D": int,
    "maxFE": int, "T": int, "theta": float, "record_interval": int,
}
_GRID_KEYS = {"problems", "strategies", "scalarizers"}


def _typed(value: Any, want: type, where: str) -> Any:
    ok = (
        isinstance(value, str) if want is str
        else isinstance(value, int) and not isinstance(value, bool) if want is int
        else isinstance(value, (int, float)) and not isinstance(value, bool)
    )
    if not ok:
        raise ConfigParseError(f"{where}: expected {want.__name__}, got {type(value).__name__}")
    return float(value) if want is float else value


def _enum(cls, value: str, where: str):
    for member in cls:
        if member.value.lower() == value.lower():
            return member
    allowed = ", ".join(m.value for m in cls)
    raise ConfigParseError(f"{where}: {value!r} is not one of {allowed}")


def _parse_cell(raw: Any, where: str, defaults: dict) -> Cell:
    if not isinstance(raw, dict):
        raise ConfigParseError(f"{where}: expected an object")
    merged = {**defaults, **raw}
    for key in merged:
        if key not in _CELL_TYPES:
            raise ConfigParseError(f"{where}.{key}: unknown key")
    for key in ("problem", "strategy"):
        if key not in merged:
            raise ConfigParseError(f"{where}.{key}: missing required key")
    kw = {k: _typed(v, _CELL_TYPES[k], f"{where}.{k}") for k, v in merged.items()}
    problem = kw.pop("problem").upper()
    if problem not in BENCHMARK_PRESETS:
        raise ConfigParseError(f"{where}.problem: unknown problem {problem!r}")
    kw["strategy"] = _enum(Strategy, kw["strategy"], f"{where}.strategy")
    if "scalarizer" in kw:
        kw["scalarizer"] = _enum(Decomposition, kw["scalarizer"], f"{where}.scalarizer")
    cell = Cell(problem=problem, **kw)
    try:
        cell.run_config(0)
    except (ConfigError, ValueError) as exc:
        raise ConfigParseError(f"{where}: {exc}") from exc
    return cell


def parse_config(text: str, **overrides: Any) -> ExperimentSpec:
    """Parse a JSON experiment config.

    Cells come from an explicit ``cells`` list, a ``grid`` of problems x
    strategies x scalarizers, or both. ``defaults`` are merged into every cell.
    Keyword ``overrides`` (non-None values only) replace top-level keys, which
    is how CLI flags take precedence over the file.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigParseError("top level: expected an object")
    raw.update({k: v for k, v in overrides.items() if v is not None})
    for key in raw:
        if key not in _TOP_KEYS:
            raise ConfigParseError(f"{key}: unknown key")
    defaults = raw.get("defaults", {})
    if not isinstance(defaults, dict):
        raise ConfigParseError("defaults: expected an object")

    cells: list[Cell] = []
    for i, c in enumerate(raw.get("cells", [])):
        cells.append(_parse_cell(c, f"cells[{i}]", defaults))
    if "grid" in raw:
        grid = raw["grid"]
        if not isinstance(grid, dict):
            raise ConfigParseError("grid: expected an object")
        for key in grid:
            if key not in _GRID_KEYS:
                raise ConfigParseError(f"grid.{key}: unknown key")
        problems = grid.get("problems")
        strategies = grid.get("strategies")
        if not problems:
            raise ConfigParseError("grid.problems: missing required key")
        if not strategies:
            raise ConfigParseError("grid.strategies: missing required key")
        scalarizers = grid.get("scalarizers", [defaults.get("scalarizer", "MTCH")])
        for p in problems:
            for s in strategies:
                for d in scalarizers:
                    cells.append(_parse_cell({"problem": p, "strategy": s, "scalarizer": d},
                                             f"grid[{p},{s},{d}]", defaults))
    if not cells:
        raise ConfigParseError("cells: missing required key (or grid)")

    baseline = None
    if "baseline" in raw:
        b = raw["baseline"]
        if not isinstance(b, dict) or "strategy" not in b:
            raise ConfigParseError("baseline: expected an object with a strategy")
        baseline = (
            _enum(Strategy, _typed(b["strategy"], str, "baseline.strategy"), "baseline.strategy"),
            _enum(Decomposition, _typed(b.get("scalarizer", "MTCH"), str, "baseline.scalarizer"),
                  "baseline.scalarizer"),
        )
    try:
        return ExperimentSpec(
            cells=tuple(cells),
            replicates=_typed(raw.get("replicates", 30), int, "replicates"),
            base_seed=_typed(raw.get("base_seed", 0), int, "base_seed"),
            output_dir=Path(_typed(raw.get("output_dir", "results"), str, "output_dir")),
            parallelism=_typed(raw.get("parallelism", 1), int, "parallelism"),
            baseline=baseline,
        )
    except ConfigError as exc:
        raise ConfigParseError(str(exc)) from exc


# -- persistence ---------------------------------------------------------------

def _fmt(v: float) -> str:
    return repr(float(v))


def write_history_csv(result: RunResult, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["FE", "HV", "IGD"])
        for fe, hv, ig in result.history:
            w.writerow([fe, _fmt(hv), _fmt(ig)])


def write_population_csv(result: RunResult, path: Path) -> None:
    pop = result.final_population
    M, D = pop.F.shape[1], pop.X.shape[1]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"f{j + 1}" for j in range(M)] + [f"x{j + 1}" for j in range(D)])
        for f, x in zip(pop.F, pop.X):
            w.writerow([_fmt(v) for v in f] + [_fmt(v) for v in x])


def read_history_csv(path: Path) -> list[tuple[int, float, float]]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"{path}: empty history")
    return [(int(r["FE"]), float(r["HV"]), float(r["IGD"])) for r in rows]


def read_population_csv(path: Path) -> tuple[np.ndarray, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = np.array([[float(v) for v in row] for row in reader])
    M = sum(h.startswith("f") for h in header)
    return data[:, :M], data[:, M:]


def write_rows(path: Path, header: list[str], rows: Iterable[Iterable[Any]]) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


# -- running -------------------------------------------------------------------

@dataclass
class CellOutcome:
    cell: Cell
    results: list[RunResult] = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    outcomes: list[CellOutcome]
    summary_path: Path

    @property
    def failed(self) -> list[CellOutcome]:
        return [o for o in self.outcomes if not o.ok]


def _run_one(config: RunConfig) -> RunResult:
    return moead_run(config)


def _cell_dir(root: Path, cell: Cell) -> Path:
    return root / "runs" / cell.label


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Run every replicate of every cell, persist the CSVs and write the summary.

    A failing run aborts its cell (logged, recorded as ``error``); the other
    cells still run.
    """
    root = Path(spec.output_dir)
    root.mkdir(parents=True, exist_ok=True)
    (root / "cells.json").write_text(json.dumps(
        {"base_seed": spec.base_seed, "replicates": spec.replicates,
         "baseline": [v.value for v in spec.baseline_key],
         "cells": [_cell_record(c) for c in spec.cells]}, indent=2) + "\n")

    pool = ProcessPoolExecutor(spec.parallelism) if spec.parallelism > 1 else None
    outcomes: list[CellOutcome] = []
    timings: list[tuple[str, int, str]] = []
    try:
        for cell in spec.cells:
            outcome = CellOutcome(cell)
            out = _cell_dir(root, cell)
            out.mkdir(parents=True, exist_ok=True)
            configs = [cell.run_config(spec.seed(cell, r)) for r in range(spec.replicates)]
            try:
                results = pool.map(_run_one, configs) if pool else map(_run_one, configs)
                for r, res in enumerate(results):
                    write_history_csv(res, out / f"rep{r}_history.csv")
                    write_population_csv(res, out / f"rep{r}_population.csv")
                    timings.append((cell.label, r, f"{res.wall_time:.3f}"))
                    outcome.results.append(res)
            except Exception as exc:  # noqa: BLE001  a cell failure must not stop the others
                outcome.error = f"{type(exc).__name__}: {exc}"
                log.error("cell %s failed: %s", cell.label, outcome.error)
            outcomes.append(outcome)
    finally:
        if pool:
            pool.shutdown()

    write_rows(root / "timings.csv", ["cell", "replicate", "wall_time"], timings)
    failed = {o.cell.label: o.error for o in outcomes if not o.ok}
    summary = summarize(root, failed=failed)
    return ExperimentReport(spec, outcomes, summary)


def _cell_record(c: Cell) -> dict:
    d = asdict(c)
    d["strategy"] = c.strategy.value
    d["scalarizer"] = c.scalarizer.value
    return d


def _cell_from_record(d: dict) -> Cell:
    kw = {f.name: d[f.name] for f in fields(Cell) if f.name in d}
    kw["strategy"] = Strategy(kw["strategy"])
    kw["scalarizer"] = Decomposition(kw["scalarizer"])
    return Cell(**kw)


SUMMARY_HEADER = [
    "problem", "strategy", "scalarizer", "replicates",
    "HV_mean", "HV_std", "HV_median", "HV_vs_baseline",
    "IGD_mean", "IGD_std", "IGD_median", "IGD_vs_baseline",
    "HV", "IGD", "status",
]


def final_metrics(root: Path, cell: Cell, replicates: int) -> tuple[np.ndarray, np.ndarray]:
    """Final HV and IGD of each persisted replicate of ``cell``, in replicate order."""
    out = _cell_dir(root, cell)
    finals = [read_history_csv(out / f"rep{r}_history.csv")[-1] for r in range(replicates)]
    return np.array([f[1] for f in finals]), np.array([f[2] for f in finals])


def _symbol(a: np.ndarray, b: np.ndarray, larger_is_better: bool, alpha: float) -> str:
    if len(a) != len(b) or len(a) < MIN_RANKSUM_REPLICATES:
        return "NA"
    return rank_sum_compare(a, b, alpha=alpha, larger_is_better=larger_is_better)


def _mean_std(v: np.ndarray) -> tuple[float, float]:
    if len(v) == 0:
        return math.nan, math.nan
    return float(np.mean(v)), float(np.std(v, ddof=1)) if len(v) > 1 else 0.0


def summarize(root: Path, failed: dict[str, str] | None = None, alpha: float = 0.05) -> Path:
    """Rebuild ``summary.csv`` from the per-run CSVs under ``root``.

    Symbols compare each cell against the baseline strategy/scalarizer on the
    same problem: '+' better, '-' worse, '≈' no significant difference, 'NA'
    when either side has fewer than 5 replicates or the baseline is missing.
    """
    root = Path(root)
    meta = json.loads((root / "cells.json").read_text())
    cells = [_cell_from_record(d) for d in meta["cells"]]
    base_s, base_d = Strategy(meta["baseline"][0]), Decomposition(meta["baseline"][1])
    failed = failed or {}
    finals = {c.label: final_metrics(root, c, meta["replicates"]) for c in cells if c.label not in failed}

    rows = []
    for c in cells:
        if c.label in failed:
            rows.append([c.problem, c.strategy.value, c.scalarizer.value, 0]
                        + [""] * 10 + [f"failed: {failed[c.label]}"])
            continue
        hv, ig = finals[c.label]
        base = next((b for b in cells if b.problem == c.problem and b.strategy == base_s
                     and b.scalarizer == base_d and b.label in finals), None)
        if base is None:
            s_hv = s_ig = "NA"
        else:
            bhv, big = finals[base.label]
            s_hv = _symbol(hv, bhv, True, alpha)
            s_ig = _symbol(ig, big, False, alpha)
        hm, hs = _mean_std(hv)
        im, is_ = _mean_std(ig)
        rows.append([
            c.problem, c.strategy.value, c.scalarizer.value, len(hv),
            _fmt(hm), _fmt(hs), _fmt(np.median(hv)), s_hv,
            _fmt(im), _fmt(is_), _fmt(np.median(ig)), s_ig,
            f"{hm:.4e} ({hs:.2e})", f"{im:.4e} ({is_:.2e})", "ok",
        ])
    return write_rows(root / "summary.csv", SUMMARY_HEADER, rows)


def read_summary(path: Path) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# -- plot data -----------------------------------------------------------------

def median_replicate(results: list[RunResult]) -> RunResult:
    """Replicate at the median final HV (the lower median for even counts)."""
    if not results:
        raise ValueError("no results")
    order = sorted(range(len(results)), key=lambda i: (results[i].final_hv, i))
    return results[order[(len(results) - 1) // 2]]


def emit_plot_data(results: list[RunResult], kind: str, path: Path | str) -> Path:
    """Write one plain CSV for plotting.

    population_scatter: rows tagged 'population' (median replicate) and 'pf'.
    metric_trajectory: FE,HV,IGD of the median replicate.
    pf_overlay: the reference front sample.
    """
    if kind not in PLOT_KINDS:
        raise ValueError(f"unknown plot kind {kind!r}; expected one of {PLOT_KINDS}")
    path = Path(path)
    med = median_replicate(results)
    spec = med.config.problem()
    fcols = [f"f{j + 1}" for j in range(spec.M)]
    if kind == "metric_trajectory":
        return write_rows(path, ["FE", "HV", "IGD"],
                          ([fe, _fmt(hv), _fmt(ig)] for fe, hv, ig in med.history))
    if kind == "pf_overlay":
        return write_pf_csv(spec, path)
    pf = pf_sample(spec)
    rows = [["population"] + [_fmt(v) for v in f] for f in med.final_population.F]
    rows += [["pf"] + [_fmt(v) for v in f] for f in pf]
    return write_rows(path, ["set"] + fcols, rows)


def write_pf_csv(spec_or_id, path: Path | str, count: int | None = None) -> Path:
    spec = get_problem(spec_or_id) if isinstance(spec_or_id, str) else spec_or_id
    P = pf_sample(spec) if count is None else pf_sample(spec, count)
    return write_rows(Path(path), [f"f{j + 1}" for j in range(spec.M)],
                      ([_fmt(v) for v in f] for f in P))
