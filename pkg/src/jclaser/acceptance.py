"""Acceptance checks: the measurable claims this package must reproduce.

Each criterion is a function returning a CheckResult with the measured
numbers, the tolerance, and a verdict.  The checks are grouped into
suites (limits, universality, oracle-equivalence, figures) runnable from
the command line via ``jclaser accept`` or from the test suite.

Reference constants: the universal transition curve g2(pump) has a flat
maximum whose height and location mark the crossover between one-photon
and stimulated-emission lasing.  The expected values used here are
(g2, pump/gamma_a) = (1.10282, 2.115) for equal emitter and cavity decay
and (1.01816, 4.5989) for a non-decaying emitter.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .analytics import (
    SystemParams,
    c1_linear_coefficient,
    g0_coherence,
    jump_approx,
)
from .correlators import coherence, mean_photon_number, solve_recurrence
from .oracle import observables, steady_state_auto
from .photon_stats import (
    distribution_from_moments,
    find_g2_peak,
    photon_distribution,
    poisson_deviation,
)

__all__ = [
    "CheckResult",
    "SUITES",
    "criterion_names",
    "run_criterion",
    "run_suite",
    "run_all",
    "format_line",
    "format_report",
]

# Expected universal-transition constants (see module docstring): height
# tolerance is absolute, location tolerance is relative.
_PEAK_EQUAL = {"g2": 1.10282, "pump": 2.115}
_PEAK_ZERO = {"g2": 1.01816, "pump": 4.5989}
_PEAK_G2_TOL = 1e-3
_PEAK_PUMP_TOL = 1e-2


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one acceptance criterion."""

    name: str
    passed: bool
    measured: str
    tolerance: str
    detail: str = ""


def _peak_check(name, gamma_sigma, expected) -> CheckResult:
    params = SystemParams.from_dimensionless(pump=1.0, gamma_sigma=gamma_sigma)
    peak = find_g2_peak(params, universal_mode=True)
    g2_err = abs(peak.g2_max - expected["g2"])
    pump_err = abs(peak.P_star / expected["pump"] - 1.0)
    passed = (
        peak.converged and g2_err <= _PEAK_G2_TOL and pump_err <= _PEAK_PUMP_TOL
    )
    return CheckResult(
        name=name,
        passed=passed,
        measured=f"g2_max={peak.g2_max:.6f} at pump={peak.P_star:.5f}",
        tolerance=(
            f"g2_max={expected['g2']}±{_PEAK_G2_TOL:g}, "
            f"pump={expected['pump']}±{_PEAK_PUMP_TOL:.0%}"
        ),
        detail=(
            f"|dg2|={g2_err:.2e}, |dpump|/pump={pump_err:.4%}, "
            f"converged={peak.converged}"
        ),
    )


def criterion_1() -> CheckResult:
    """Universal g2 peak with equal emitter and cavity decay."""
    return _peak_check("universal peak, gamma_sigma = gamma_a", 1.0, _PEAK_EQUAL)


def criterion_2() -> CheckResult:
    """Universal g2 peak with a non-decaying emitter."""
    return _peak_check("universal peak, gamma_sigma = 0", 0.0, _PEAK_ZERO)


def criterion_3() -> CheckResult:
    """Vanishing-pump coherences match the closed product form."""
    # kappa_sigma = 1e6 gamma_a means gamma_a / g = 2e-3.
    tol = 1e-5
    worst = 0.0
    worst_label = ""
    for gamma in (0.0, 0.5, 1.0, 3.0, 10.0):
        params = SystemParams.from_dimensionless(
            pump=1e-6, gamma_sigma=gamma, cavity_decay=2e-3
        )
        series = solve_recurrence(params)
        for order in range(2, 6):
            reference = g0_coherence(params, order)
            measured = coherence(series, order)
            err = abs(measured / reference - 1.0)
            if err > worst:
                worst, worst_label = err, f"gamma={gamma:g}, n={order}"
    # Equal rates: every order must sit at the Poisson value 1.
    params = SystemParams.from_dimensionless(
        pump=1e-6, gamma_sigma=1.0, cavity_decay=2e-3
    )
    series = solve_recurrence(params)
    unity = max(abs(coherence(series, n) - 1.0) for n in range(2, 6))
    passed = worst <= tol and unity <= tol
    return CheckResult(
        name="vanishing-pump coherence orders 2..5",
        passed=passed,
        measured=(
            f"max rel dev {worst:.2e} ({worst_label}); "
            f"max |g0(n)-1| at equal rates {unity:.2e}"
        ),
        tolerance=f"{tol:g} relative",
    )


def _slope(params: SystemParams, lo: float, hi: float, points: int = 8) -> float:
    pumps = np.geomspace(lo, hi, points) * params.gamma_a
    n_a = [
        mean_photon_number(solve_recurrence(params.with_pump(p)))
        for p in pumps
    ]
    return float(np.polyfit(pumps, n_a, 1)[0])


@functools.lru_cache(maxsize=None)
def _slope_table():
    """Low- and high-pump intensity slopes for three emitter decays."""
    table = {}
    for gamma in (0.1, 1.0, 10.0):
        params = SystemParams.from_dimensionless(
            pump=1.0, gamma_sigma=gamma, cavity_decay=1e-2
        )
        table[gamma] = (
            params,
            _slope(params, 1e-3, 1e-2),
            _slope(params, 20.0, 100.0),
        )
    return table


def criterion_4() -> CheckResult:
    """Mean photon number grows with the two predicted slopes."""
    tol = 0.02
    details = []
    passed = True
    for gamma, (params, slope_lo, slope_hi) in _slope_table().items():
        c1 = c1_linear_coefficient(params)
        c2 = 0.5 / params.gamma_a
        err_lo = abs(slope_lo / c1 - 1.0)
        err_hi = abs(slope_hi / c2 - 1.0)
        passed = passed and err_lo <= tol and err_hi <= tol
        details.append(
            f"gamma={gamma:g}: low {err_lo:.3%} of C1, high {err_hi:.3%} of C2"
        )
    return CheckResult(
        name="linear and lasing intensity slopes",
        passed=passed,
        measured="; ".join(details),
        tolerance=f"{tol:.0%} relative on both slopes",
    )


def criterion_5() -> CheckResult:
    """The intensity jump matches the jump formula and flips sign."""
    tol = 0.05
    details = []
    passed = True
    signs = {}
    for gamma, (params, slope_lo, slope_hi) in _slope_table().items():
        measured = math.log(slope_hi / slope_lo)
        predicted = jump_approx(params)
        err = abs(measured - predicted)
        signs[gamma] = measured
        passed = passed and err <= tol
        details.append(
            f"gamma={gamma:g}: measured {measured:+.4f}, "
            f"predicted {predicted:+.4f}"
        )
    # Sign change at equal rates: negative below, positive above, and the
    # equal-rate jump is the smallest in magnitude.
    sign_ok = (
        signs[0.1] < 0.0 < signs[10.0]
        and abs(signs[1.0]) < min(abs(signs[0.1]), abs(signs[10.0]))
    )
    passed = passed and sign_ok
    return CheckResult(
        name="intensity jump across the transition",
        passed=passed,
        measured="; ".join(details),
        tolerance=f"{tol:g} absolute; sign flips at gamma_sigma = gamma_a",
        detail=f"sign structure ok: {sign_ok}",
    )


@functools.lru_cache(maxsize=None)
def _oracle_points():
    """Twenty seeded parameter points with their oracle steady states."""
    rng = np.random.default_rng(20260821)
    points = []
    for _ in range(20):
        gamma_a = 10.0 ** rng.uniform(-3.0, -1.5)
        gamma_sigma = gamma_a * 10.0 ** rng.uniform(-1.0, 1.0)
        pump = gamma_a * 10.0 ** rng.uniform(math.log10(0.05), math.log10(25.0))
        params = SystemParams(
            g=1.0, gamma_a=gamma_a, gamma_sigma=gamma_sigma, pump=pump
        )
        state = steady_state_auto(params)
        state.validate()
        points.append((params, state, observables(state, k_max=2)))
    return tuple(points)


def criterion_6() -> CheckResult:
    """Recurrence and density-matrix engines agree to a part in 10^6."""
    tol = 1e-6
    worst_na = worst_g2 = 0.0
    for params, state, obs in _oracle_points():
        series = solve_recurrence(params)
        n_a = mean_photon_number(series)
        g2 = coherence(series, 2)
        worst_na = max(worst_na, abs(n_a / obs.n_a - 1.0))
        worst_g2 = max(worst_g2, abs(g2 / obs.coherence(2) - 1.0))
    passed = worst_na <= tol and worst_g2 <= tol
    return CheckResult(
        name="engine equivalence at 20 seeded points",
        passed=passed,
        measured=f"worst n_a dev {worst_na:.2e}, worst g2 dev {worst_g2:.2e}",
        tolerance=f"{tol:g} relative; all states pass matrix invariants",
    )


def criterion_7() -> CheckResult:
    """The g2(pump) curve is universal in good strong coupling."""
    tol = 1e-3
    pumps = np.geomspace(0.1, 30.0, 40)

    def curve(cavity_decay: float | None) -> np.ndarray:
        values = []
        for pump in pumps:
            params = SystemParams.from_dimensionless(
                pump=pump,
                gamma_sigma=1.0,
                cavity_decay=1e-3 if cavity_decay is None else cavity_decay,
            )
            series = solve_recurrence(
                params, universal_mode=cavity_decay is None
            )
            values.append(coherence(series, 2))
        return np.array(values)

    reference = curve(None)
    collapse = max(
        float(np.max(np.abs(curve(1e-3) - reference))),
        float(np.max(np.abs(curve(1e-4) - reference))),
    )
    weak_drop = float(np.max(reference) - np.max(curve(1e-1)))
    passed = collapse <= tol and weak_drop > tol
    return CheckResult(
        name="universality of the g2 curve",
        passed=passed,
        measured=(
            f"max collapse dev {collapse:.2e}; "
            f"weak-coupling peak lower by {weak_drop:.2e}"
        ),
        tolerance=f"collapse within {tol:g}; weak-coupling drop above {tol:g}",
    )


def criterion_8() -> CheckResult:
    """Deep in the lasing plateau the statistics are Poissonian."""
    tol = 1e-3
    params = SystemParams.from_dimensionless(
        pump=50.0, gamma_sigma=1.0, cavity_decay=1e-3
    )
    series = solve_recurrence(params)
    g2_dev = abs(coherence(series, 2) - 1.0)
    state = steady_state_auto(params, tail_tol=1e-10)
    dist = photon_distribution(state.photon_distribution(), source="oracle")
    delta = poisson_deviation(dist)
    passed = g2_dev <= tol and delta.max_abs <= tol
    return CheckResult(
        name="Poisson recovery at pump = 50 gamma_a",
        passed=passed,
        measured=f"|g2-1|={g2_dev:.2e}, max |delta_n|={delta.max_abs:.2e}",
        tolerance=f"both below {tol:g}",
        detail=f"n_bar={dist.n_bar:.4f}, n_max={state.n_max}",
    )


def criterion_9() -> CheckResult:
    """Excitation flux balances on every oracle steady state."""
    tol = 1e-8
    worst = 0.0
    for params, state, obs in _oracle_points():
        inflow = params.pump * (1.0 - obs.n_sigma)
        outflow = params.gamma_a * obs.n_a + params.gamma_sigma * obs.n_sigma
        worst = max(worst, abs(outflow - inflow) / max(abs(inflow), 1e-300))
    passed = worst <= tol
    return CheckResult(
        name="flux balance on oracle steady states",
        passed=passed,
        measured=f"worst relative imbalance {worst:.2e}",
        tolerance=f"{tol:g} relative",
    )


def criterion_10() -> CheckResult:
    """Poisson deviations show the documented shape along the transition."""

    def delta_for(pump: float, gamma_sigma: float = 1.0):
        params = SystemParams.from_dimensionless(
            pump=pump, gamma_sigma=gamma_sigma
        )
        series = solve_recurrence(params, universal_mode=True)
        return poisson_deviation(distribution_from_moments(series))

    # One-photon region: the expected pattern favors the n = 1 rung and
    # depletes n = 2, with the imbalance growing with pump.
    low = [delta_for(p) for p in (0.1, 0.2, 0.3)]
    one_photon_ok = all(d.delta[1] > 0.0 and d.delta[2] < 0.0 for d in low)
    growth_ok = low[0].max_abs < low[1].max_abs < low[2].max_abs
    signs = "".join(
        "+" if low[-1].delta[n] > 0 else "-" for n in range(3)
    )
    # Diagnostic contrast: the same pattern on the non-decaying-emitter
    # curve, where rung pinning is strongest.
    pinned = delta_for(0.3, gamma_sigma=0.0)
    pinned_ok = pinned.delta[1] > 0.0 and pinned.delta[2] < 0.0

    # Transition region: the deviation spreads over more and more rungs.
    peak = find_g2_peak(
        SystemParams.from_dimensionless(pump=1.0, gamma_sigma=1.0),
        universal_mode=True,
    )
    pumps = np.geomspace(peak.P_star / 2.0, 2.0 * peak.P_star, 5)
    widths = [int(np.sum(np.abs(delta_for(p).delta) > 1e-4)) for p in pumps]
    spread_ok = all(a <= b for a, b in zip(widths, widths[1:]))
    spread_ok = spread_ok and widths[-1] > widths[0]

    passed = one_photon_ok and growth_ok and spread_ok
    return CheckResult(
        name="Poisson-deviation shape along the transition",
        passed=passed,
        measured=(
            f"delta_1>0 and delta_2<0 at equal rates: {one_photon_ok} "
            f"(signs of delta_0..2 are {signs}); "
            f"max|delta| growth: {growth_ok}; widths {widths}"
        ),
        tolerance="sign pattern, growing imbalance, widening support",
        detail=(
            "the stated rung pattern holds on the gamma_sigma = 0 curve "
            f"instead: {pinned_ok}"
        ),
    )


_CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}

SUITES = {
    "limits": (3,),
    "universality": (1, 2, 7),
    "oracle-equivalence": (6, 9),
    "figures": (4, 5, 8, 10),
}


def criterion_names():
    """Criterion numbers in execution order."""
    return tuple(sorted(_CRITERIA))


def run_criterion(number: int) -> CheckResult:
    """Run one numbered criterion."""
    return _CRITERIA[number]()


def run_suite(name: str):
    """Run one named suite; returns a list of (number, CheckResult)."""
    if name == "all":
        numbers = criterion_names()
    elif name in SUITES:
        numbers = SUITES[name]
    else:
        raise ValueError(
            f"unknown suite {name!r}; choose from "
            f"{('all',) + tuple(sorted(SUITES))}"
        )
    return [(number, run_criterion(number)) for number in numbers]


def run_all():
    """Run every criterion in numeric order."""
    return run_suite("all")


def format_line(number: int, result: CheckResult) -> str:
    """One pass/fail line for a single criterion."""
    verdict = "PASS" if result.passed else "FAIL"
    line = (
        f"{verdict}  criterion {number:2d}  {result.name}: "
        f"{result.measured} (tolerance: {result.tolerance})"
    )
    if result.detail:
        line += f" [{result.detail}]"
    return line


def format_report(results) -> str:
    """Human-readable pass/fail block, one line per criterion."""
    lines = [format_line(number, result) for number, result in results]
    failed = sum(1 for _, r in results if not r.passed)
    lines.append(
        f"{len(results) - failed}/{len(results)} criteria passed"
        + (f", {failed} FAILED" if failed else "")
    )
    return "\n".join(lines)
