"""Parameter sweeps and their machine-readable output formats.

A sweep evaluates the laser observables along a pump or emitter-decay
grid with either the moment-recurrence engine, the density-matrix
oracle, or both, and serializes the result as a CSV table with a
commented header plus an optional JSON sidecar.  Output is deterministic:
identical spec and package version give byte-identical files.
"""

from __future__ import annotations

import dataclasses
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analytics import SystemParams, beta_factor, emitter_population, jump
from .correlators import coherence, mean_photon_number, solve_recurrence
from .errors import ConvergenceError
from .oracle import observables, steady_state_auto
from .photon_stats import PhotonDistribution, PoissonDeviation

__all__ = [
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "evaluate_point",
    "run_sweep",
    "render_csv",
    "write_csv",
    "write_sidecar",
    "write_distribution",
]

_VARIABLES = ("pump", "gamma_sigma")
_ENGINES = ("recurrence", "oracle", "both")
_GRID_KINDS = ("log", "linear")

# Fixed column order of the CSV output.
CSV_COLUMNS = (
    "swept_value",
    "n_a",
    "n_sigma",
    "intensity",
    "g2",
    "g3",
    "g4",
    "jump",
    "beta",
    "engine",
    "n_max",
    "converged",
)


@dataclass(frozen=True)
class SweepSpec:
    """Validated description of one sweep.

    Grid values are dimensionless (units of ``params.gamma_a``), matching
    the convention in which pump and emitter decay are always quoted.
    The swept field of ``params`` is ignored and replaced per point.
    """

    params: SystemParams
    variable: str = "pump"
    grid_kind: str = "log"
    start: float = 1e-3
    stop: float = 1e3
    count: int = 25
    engine: str = "recurrence"
    universal_mode: bool = False
    n_max: int | None = None
    workers: int = 1

    def __post_init__(self):
        if self.variable not in _VARIABLES:
            raise ValueError(f"variable must be one of {_VARIABLES}, got {self.variable!r}")
        if self.engine not in _ENGINES:
            raise ValueError(f"engine must be one of {_ENGINES}, got {self.engine!r}")
        if self.grid_kind not in _GRID_KINDS:
            raise ValueError(f"grid_kind must be one of {_GRID_KINDS}, got {self.grid_kind!r}")
        if self.count < 2:
            raise ValueError(f"grid count must be at least 2, got {self.count}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("grid endpoints must be finite")
        if not self.start < self.stop:
            raise ValueError(f"grid start must be below stop, got [{self.start}, {self.stop}]")
        if self.grid_kind == "log" and self.start <= 0.0:
            raise ValueError("log grids need a positive start")
        if self.universal_mode and self.engine != "recurrence":
            raise ValueError("universal_mode exists only for the recurrence engine")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")

    def grid(self) -> np.ndarray:
        """Swept values in units of gamma_a."""
        if self.grid_kind == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def point_params(self, value: float) -> SystemParams:
        """Parameters with the swept variable set to ``value`` gamma_a."""
        if self.variable == "pump":
            return self.params.with_pump(value * self.params.gamma_a)
        return dataclasses.replace(
            self.params, gamma_sigma=value * self.params.gamma_a
        )


@dataclass(frozen=True)
class SweepRow:
    """One evaluated grid point; mirrors the CSV columns plus a note."""

    swept_value: float
    n_a: float
    n_sigma: float
    intensity: float
    g2: float
    g3: float
    g4: float
    jump: float
    beta: float
    engine: str
    n_max: int
    converged: bool
    note: str = ""


@dataclass(frozen=True)
class SweepResult:
    """Rows in grid order plus cross-engine discrepancies when requested."""

    spec: SweepSpec
    rows: tuple
    discrepancies: tuple


def _failed_row(value, engine, note):
    nan = math.nan
    return SweepRow(
        swept_value=value, n_a=nan, n_sigma=nan, intensity=nan,
        g2=nan, g3=nan, g4=nan, jump=nan, beta=nan,
        engine=engine, n_max=0, converged=False, note=note,
    )


def evaluate_point(
    point: SystemParams,
    swept_value: float,
    engine: str,
    universal_mode: bool = False,
    n_max: int | None = None,
) -> SweepRow:
    """Observables at one parameter point with one engine."""
    jump_value = jump(point, universal_mode=universal_mode)
    beta = beta_factor(point, universal_mode=universal_mode)
    try:
        if engine == "recurrence":
            series = solve_recurrence(point, n_max=n_max,
                                      universal_mode=universal_mode)
            n_a = mean_photon_number(series)
            coherences = [
                coherence(series, k) if n_a > 0.0 else math.nan
                for k in (2, 3, 4)
            ]
            n_sigma = emitter_population(point, n_a)
            scale = 1.0 if universal_mode else point.gamma_a
            return SweepRow(
                swept_value=swept_value,
                n_a=n_a,
                n_sigma=n_sigma,
                intensity=scale * n_a,
                g2=coherences[0], g3=coherences[1], g4=coherences[2],
                jump=jump_value, beta=beta,
                engine="recurrence", n_max=series.n_max, converged=True,
            )
        state = steady_state_auto(point, start=n_max)
        obs = observables(state, k_max=4)
        coherences = [
            obs.coherence(k) if obs.n_a > 0.0 else math.nan
            for k in (2, 3, 4)
        ]
        return SweepRow(
            swept_value=swept_value,
            n_a=float(obs.n_a),
            n_sigma=float(obs.n_sigma),
            intensity=float(obs.intensity),
            g2=float(coherences[0]), g3=float(coherences[1]),
            g4=float(coherences[2]),
            jump=jump_value, beta=beta,
            engine="oracle", n_max=state.n_max, converged=True,
        )
    except ConvergenceError as exc:
        return _failed_row(swept_value, engine, str(exc))


def _discrepancy(value, first: SweepRow, second: SweepRow):
    if not (first.converged and second.converged):
        return {"swept_value": value, "comparable": False}
    safe = max(abs(first.n_a), 1e-300)
    return {
        "swept_value": value,
        "comparable": True,
        "n_a_rel": float(abs(first.n_a - second.n_a) / safe),
        "g2_abs": float(abs(first.g2 - second.g2)),
    }


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the sweep; failed points are kept as unconverged rows."""
    values = spec.grid()

    def at(value: float) -> list:
        point = spec.point_params(float(value))
        rows = []
        if spec.engine in ("recurrence", "both"):
            rows.append(evaluate_point(point, float(value), "recurrence",
                                       spec.universal_mode, spec.n_max))
        if spec.engine in ("oracle", "both"):
            rows.append(evaluate_point(point, float(value), "oracle",
                                       n_max=spec.n_max))
        return rows

    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            per_point = list(pool.map(at, values))
    else:
        per_point = [at(v) for v in values]

    rows = tuple(row for group in per_point for row in group)
    discrepancies = ()
    if spec.engine == "both":
        discrepancies = tuple(
            _discrepancy(float(v), group[0], group[1])
            for v, group in zip(values, per_point)
        )
    return SweepResult(spec=spec, rows=rows, discrepancies=discrepancies)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _header_lines(spec: SweepSpec) -> list:
    gamma_sigma = (
        "swept" if spec.variable == "gamma_sigma"
        else _fmt(spec.params.gamma_sigma)
    )
    pump = "swept" if spec.variable == "pump" else _fmt(spec.params.pump)
    return [
        "jclaser sweep",
        f"version: {__version__}",
        f"engine: {spec.engine}",
        f"universal_mode: {_fmt(spec.universal_mode)}",
        f"variable: {spec.variable} (units of gamma_a)",
        f"grid: {spec.grid_kind} start={_fmt(float(spec.start))} "
        f"stop={_fmt(float(spec.stop))} count={spec.count}",
        f"g: {_fmt(spec.params.g)}",
        f"gamma_a: {_fmt(spec.params.gamma_a)}",
        f"gamma_sigma: {gamma_sigma}",
        f"pump: {pump}",
        f"n_max: {'auto' if spec.n_max is None else spec.n_max}",
    ]


def render_csv(result: SweepResult) -> str:
    """The sweep as CSV text with a commented parameter header."""
    lines = [f"# {line}" for line in _header_lines(result.spec)]
    lines.append(",".join(CSV_COLUMNS))
    for row in result.rows:
        lines.append(",".join(_fmt(getattr(row, col)) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def write_csv(result: SweepResult, path) -> None:
    """Write the sweep as CSV with a commented parameter header."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(render_csv(result))


def write_sidecar(result: SweepResult, path) -> None:
    """Write full metadata (spec, rows, notes, discrepancies) as JSON."""
    spec = result.spec
    payload = {
        "version": __version__,
        "spec": {
            "g": spec.params.g,
            "gamma_a": spec.params.gamma_a,
            "gamma_sigma": spec.params.gamma_sigma,
            "pump": spec.params.pump,
            "variable": spec.variable,
            "grid_kind": spec.grid_kind,
            "start": spec.start,
            "stop": spec.stop,
            "count": spec.count,
            "engine": spec.engine,
            "universal_mode": spec.universal_mode,
            "n_max": spec.n_max,
        },
        "rows": [dataclasses.asdict(row) for row in result.rows],
        "discrepancies": list(result.discrepancies),
    }
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_distribution(
    path,
    dist: PhotonDistribution,
    deviation: PoissonDeviation,
    header=(),
) -> None:
    """Dump p(n), the Poisson reference, and delta_n for one point."""
    from .photon_stats import poisson_pmf

    reference = poisson_pmf(dist.n_bar, dist.p.size)
    lines = [f"# {line}" for line in header]
    lines.append(f"# source: {dist.source}")
    lines.append(f"# n_bar: {repr(float(dist.n_bar))}")
    lines.append("n,p_n,poisson_n,delta_n")
    for n in range(dist.p.size):
        lines.append(
            f"{n},{float(dist.p[n])!r},{float(reference[n])!r},"
            f"{float(deviation.delta[n])!r}"
        )
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
