"""Photon factorial moments of the one-emitter laser steady state.

The normally ordered moments N[n] = <a^dag^n a^n> of the cavity field obey
a three-term recurrence in n whose coefficients are rational in the rates:

    A_n N[n] = B_n N[n-1] - C_n N[n+1],   N[0] = 1,

    A_n = 1 + (Gamma + (2n - 1) gamma_a) / kappa_sigma
            + n gamma_a / (Gamma + (n - 1) gamma_a)
            - 2 pump / (Gamma + n gamma_a),
    B_n = n pump / (Gamma + (n - 1) gamma_a),
    C_n = 2 gamma_a / (Gamma + n gamma_a),

with Gamma = gamma_sigma + pump and kappa_sigma = 4 g^2 / gamma_a.  The
recurrence is closed by N[n_max + 1] = 0 and solved by a backward
continued-fraction sweep for the ratios r_n = N[n] / N[n-1]:

    r_n = B_n / (A_n + C_n r_{n+1}),

which never overflows because moments are only ever exponentiated in log
space.  The physical solution is the minimal one above the lasing peak,
so the sweep converges there, but below the peak the roles of the two
fundamental solutions swap and roundoff is amplified by a factor of about
r/n per step, exp(n_a) in total.  The sweep therefore needs a working
precision of roughly n_a / ln(10) extra decimal digits; the solver
estimates the amplification from the local characteristic roots and, when
double precision is not enough, reruns the sweep in mpmath at the
required precision.  Either way the returned series holds ordinary
floats: ratios and log N[n].

In ``universal_mode`` the 1/kappa_sigma term is dropped (perfect cavity
feeding), after which every dimensionless observable depends only on
pump / gamma_a and gamma_sigma / gamma_a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytics import SystemParams
from .errors import NegativeMomentError, ResourceLimitError

__all__ = [
    "CorrelatorSeries",
    "default_truncation",
    "solve_recurrence",
    "mean_photon_number",
    "intensity",
    "coherence",
]

# Sweeps are repeated with doubled truncation until the requested moments
# are stable to _STABLE_LOG_TOL in log magnitude.
_STABLE_LOG_TOL = 1e-11
_TRUNCATION_CEILING = 1 << 22
# Working precision: float64 error is amplification * 1e-16, so double
# precision is kept while the amplification stays below _FLOAT64_GAIN.
# Beyond that, mpmath digits cover the amplification plus slack.
_FLOAT64_GAIN = 1e5
_EXTRA_DIGITS = 18
_PRECISION_CEILING = 2000


@dataclass(frozen=True)
class CorrelatorSeries:
    """Solved moment ladder N[0..n_max] for one parameter set.

    ``log_values[n]`` holds log N[n] (-inf marks exact zeros) and
    ``ratios[n]`` holds N[n] / N[n-1] for n >= 1.  Moments up to
    ``stabilized_order`` passed the doubling check; entries close to
    ``n_max`` feel the closure N[n_max + 1] = 0 and carry truncation
    error.  ``digits`` records the working precision of the sweep (15
    means plain float64).
    """

    params: SystemParams
    n_max: int
    universal_mode: bool
    log_values: np.ndarray
    ratios: np.ndarray
    stabilized_order: int
    digits: int = 15

    @property
    def values(self):
        """Moments N[0..n_max] as plain floats (may overflow to inf)."""
        return np.exp(self.log_values)

    def value(self, n):
        """Single moment N[n]."""
        return float(np.exp(self.log_values[n]))


def default_truncation(pump_ratio: float) -> int:
    """Initial moment cutoff for a pump of ``pump_ratio`` cavity decays.

    The lasing branch sits near n_a = pump / (2 gamma_a); eight times that
    leaves room for the whole distribution, with a floor for weak pumps.
    """
    if pump_ratio <= 0:
        return 32
    return max(32, 8 * math.ceil(pump_ratio / 2.0))


def _working_rates(params: SystemParams, universal_mode: bool):
    """Reduce to (pump, gamma_a, gamma_sigma, 1/kappa_sigma) for the sweep.

    Universal mode rescales all rates by gamma_a so identical dimensionless
    inputs produce bitwise identical coefficients, and drops the
    1/kappa_sigma term.
    """
    if universal_mode:
        return params.pump_dimless, 1.0, params.gamma_dimless, 0.0
    if params.g == 0.0:
        kappa_inv = math.inf
    else:
        kappa_inv = params.gamma_a / (4.0 * params.g * params.g)
    return params.pump, params.gamma_a, params.gamma_sigma, kappa_inv


def _coefficients(pump, gamma_a, gamma_sigma, kappa_inv, n_top):
    """Vectorized recurrence coefficients A, B, C for n = 1..n_top."""
    n = np.arange(1, n_top + 1, dtype=float)
    gamma_total = gamma_sigma + pump
    below = gamma_total + (n - 1) * gamma_a
    here = gamma_total + n * gamma_a
    diag = 1.0 + (gamma_total + (2 * n - 1) * gamma_a) * kappa_inv
    diag += n * gamma_a / below - 2.0 * pump / here
    return diag, n * pump / below, 2.0 * gamma_a / here


def _sweep_plan(pump, gamma_a, gamma_sigma, kappa_inv, requested):
    """Pick truncation and precision from the characteristic roots.

    The local roots of C z^2 + A z - B = 0 are real (B, C > 0); the
    positive one tracks the physical ratio r_n, and the per-step error
    growth of the downward sweep is gain_n = C_n r_n^2 / B_n.  Summing
    log gain over the region where it exceeds one gives the total
    roundoff amplification; continuing the cumulative (signed) sum until
    it drops well below one gives a truncation at which the closure error
    reaches the head attenuated to negligibility.
    """
    horizon = max(64, requested + 16)
    floor = math.log(1e-16)
    while True:
        diag, lower, upper = _coefficients(
            pump, gamma_a, gamma_sigma, kappa_inv, horizon
        )
        root = (np.sqrt(diag * diag + 4.0 * lower * upper) - diag) / (2.0 * upper)
        with np.errstate(divide="ignore"):
            log_gain = np.log(np.maximum(root, 0.0) ** 2 * upper / lower)
        amplification = float(np.sum(log_gain[log_gain > 0.0]))
        decay = np.cumsum(log_gain)
        settled = np.nonzero(decay <= floor)[0]
        if settled.size:
            n_top = max(int(settled[0]) + 1, requested)
            break
        if horizon >= _TRUNCATION_CEILING:
            raise ResourceLimitError(
                "moment recurrence shows no stable truncation below a "
                f"cutoff of {_TRUNCATION_CEILING}"
            )
        horizon *= 2

    if amplification <= math.log(_FLOAT64_GAIN):
        digits = 15
    else:
        digits = math.ceil(amplification / math.log(10.0)) + _EXTRA_DIGITS
    return n_top, digits


def _sweep_float(pump, gamma_a, gamma_sigma, kappa_inv, n_top):
    """Backward ratio sweep in float64 from the closure r_{n_top+1} = 0."""
    diag, lower, upper = _coefficients(pump, gamma_a, gamma_sigma, kappa_inv, n_top)
    ratios = np.zeros(n_top + 1)
    r_up = 0.0
    for i in range(n_top - 1, -1, -1):
        r_up = lower[i] / (diag[i] + upper[i] * r_up)
        ratios[i + 1] = r_up
    return ratios


def _sweep_mp(pump, gamma_a, gamma_sigma, kappa_inv, n_top, digits):
    """Backward ratio sweep in mpmath working precision."""
    from mpmath import mp, mpf

    ratios = np.zeros(n_top + 1)
    with mp.workdps(digits):
        p = mpf(pump)
        ga = mpf(gamma_a)
        gs = mpf(gamma_sigma)
        ki = mpf(kappa_inv)
        gamma_total = gs + p
        r_up = mpf(0)
        for n in range(n_top, 0, -1):
            below = gamma_total + (n - 1) * ga
            here = gamma_total + n * ga
            diag = 1 + (gamma_total + (2 * n - 1) * ga) * ki
            diag += n * ga / below - 2 * p / here
            r_up = (n * p / below) / (diag + (2 * ga / here) * r_up)
            ratios[n] = float(r_up)
    return ratios


def _solve_log_moments(pump, gamma_a, gamma_sigma, kappa_inv, n_top, digits):
    """Log moments for one cutoff and precision; None if the sweep breaks.

    A physical moment sequence has strictly positive ratios.  A ratio that
    comes out zero or negative means the working precision did not survive
    the below-peak amplification, which the caller handles by escalating
    the precision.
    """
    if digits <= 15:
        ratios = _sweep_float(pump, gamma_a, gamma_sigma, kappa_inv, n_top)
    else:
        ratios = _sweep_mp(pump, gamma_a, gamma_sigma, kappa_inv, n_top, digits)
    if not np.all(ratios[1:] > 0.0) or not np.all(np.isfinite(ratios[1:])):
        return None
    logs = np.empty(n_top + 1)
    logs[0] = 0.0
    logs[1:] = np.cumsum(np.log(ratios[1:]))
    return logs


def _logs_stable(previous, current, tol):
    """Compare two log-moment prefixes; exact zeros compare equal."""
    both_zero = np.isneginf(previous) & np.isneginf(current)
    with np.errstate(invalid="ignore"):
        close = np.abs(previous - current) < tol
    return bool(np.all(both_zero | close))


def solve_recurrence(
    params: SystemParams,
    n_max: int | None = None,
    universal_mode: bool = False,
    refine: bool = True,
) -> CorrelatorSeries:
    """Solve the moment recurrence for ``params``.

    Parameters
    ----------
    params : SystemParams
        Physical rates.
    n_max : int, optional
        Moment cutoff.  Defaults to a pump-dependent estimate.  With
        ``refine`` the cutoff is doubled until the first ``n_max`` moments
        stop moving, so the default is rarely worth overriding.
    universal_mode : bool
        Drop the 1/kappa_sigma coefficient term; observables then depend
        only on pump / gamma_a and gamma_sigma / gamma_a.
    refine : bool
        Repeat with doubled cutoff until the requested moments are stable
        and positive.  ``refine=False`` runs a single sweep at exactly
        ``n_max`` (still at the estimated working precision).
    """
    pump, gamma_a, gamma_sigma, kappa_inv = _working_rates(params, universal_mode)
    requested = default_truncation(pump / gamma_a) if n_max is None else int(n_max)
    if requested < 2:
        raise ValueError(f"n_max must be at least 2, got {requested}")

    if pump == 0.0 or kappa_inv == math.inf:
        # Unpumped or decoupled cavity: every moment above N[0] vanishes.
        log_values = np.full(requested + 1, -np.inf)
        log_values[0] = 0.0
        return CorrelatorSeries(
            params=params,
            n_max=requested,
            universal_mode=universal_mode,
            log_values=log_values,
            ratios=np.zeros(requested + 1),
            stabilized_order=requested,
        )

    n_top, digits = _sweep_plan(pump, gamma_a, gamma_sigma, kappa_inv, requested)
    if not refine:
        n_top = requested
    logs = None
    for attempt in range(4):
        logs = _solve_log_moments(
            pump, gamma_a, gamma_sigma, kappa_inv, n_top, digits
        )
        if logs is not None:
            break
        digits = max(30, math.ceil(digits * 1.5))
        if digits > _PRECISION_CEILING:
            break
    if logs is None:
        raise NegativeMomentError(
            "moment ratios stayed nonpositive up to working precision "
            f"{digits}; the parameter point is outside the solver's reach"
        )

    if not refine:
        return _build_series(params, universal_mode, logs, 0, digits)

    while n_top <= _TRUNCATION_CEILING:
        doubled = _solve_log_moments(
            pump, gamma_a, gamma_sigma, kappa_inv, 2 * n_top, digits
        )
        if doubled is None:
            raise NegativeMomentError(
                f"moment ratios turned nonpositive at cutoff {2 * n_top}"
            )
        if _logs_stable(
            logs[: requested + 1], doubled[: requested + 1], _STABLE_LOG_TOL
        ):
            return _build_series(
                params, universal_mode, doubled, requested, digits
            )
        logs = doubled
        n_top *= 2

    raise ResourceLimitError(
        f"moment recurrence did not stabilize below a cutoff of "
        f"{_TRUNCATION_CEILING} (pump / gamma_a = {pump / gamma_a:g})"
    )


def _build_series(params, universal_mode, logs, stabilized_order, digits):
    n_top = len(logs) - 1
    with np.errstate(invalid="ignore", over="ignore"):
        ratios = np.exp(np.diff(logs))
    ratios = np.concatenate(([0.0], np.nan_to_num(ratios, nan=0.0)))
    return CorrelatorSeries(
        params=params,
        n_max=n_top,
        universal_mode=universal_mode,
        log_values=logs,
        ratios=ratios,
        stabilized_order=stabilized_order,
        digits=digits,
    )


def mean_photon_number(series: CorrelatorSeries) -> float:
    """Mean cavity photon number n_a = N[1]."""
    return series.value(1)


def intensity(series: CorrelatorSeries) -> float:
    """Emitted intensity gamma_a * n_a in photons per unit time."""
    return series.params.gamma_a * mean_photon_number(series)


def coherence(series: CorrelatorSeries, n: int) -> float:
    """Equal-time coherence g^(n) = N[n] / N[1]^n.

    Computed in log space, so lasing states with huge N[n] are exact.
    Raises ZeroDivisionError for an unpumped system (N[1] = 0).
    """
    if not 1 <= n <= series.n_max:
        raise ValueError(f"order must lie in [1, {series.n_max}], got {n}")
    log_n1 = series.log_values[1]
    if np.isneginf(log_n1):
        raise ZeroDivisionError("g^(n) is undefined for an unpumped cavity")
    return float(np.exp(series.log_values[n] - n * log_n1))
