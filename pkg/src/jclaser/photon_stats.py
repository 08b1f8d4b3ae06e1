"""Photon-number distribution analysis and the coherence-peak threshold.

Tools that sit on top of the moment ladder and the density-matrix solver:
Poisson deviations delta_n = p(n) - exp(-n_bar) n_bar^n / n!, inversion of
factorial moments into p(n), and the location of the g^(2) maximum along
the pump axis, which marks the transition between the two lasing regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .analytics import SystemParams
from .correlators import CorrelatorSeries, coherence, solve_recurrence
from .errors import MomentInversionError

__all__ = [
    "PhotonDistribution",
    "PoissonDeviation",
    "PeakResult",
    "photon_distribution",
    "poisson_pmf",
    "poisson_deviation",
    "distribution_from_moments",
    "find_g2_peak",
]

# Validation tolerances for a physical photon-number distribution.
_NEGATIVE_TOL = 1e-12
_NORM_TOL = 1e-9


@dataclass(frozen=True)
class PhotonDistribution:
    """Photon-number probabilities p(0..n_max) with provenance.

    ``source`` records where the numbers came from ("oracle" for the
    density-matrix diagonal, "moment-inversion" for the alternating
    factorial-moment series).
    """

    p: np.ndarray
    n_bar: float
    source: str

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        object.__setattr__(self, "p", p)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("p must be a nonempty 1-d array")
        if float(np.min(p)) < -_NEGATIVE_TOL:
            raise ValueError(
                f"p({int(np.argmin(p))}) = {float(np.min(p)):.3e} is negative "
                "beyond the round-off tolerance"
            )
        total = float(np.sum(p))
        if abs(total - 1.0) > _NORM_TOL:
            raise ValueError(f"p sums to {total!r}, not 1 within {_NORM_TOL:g}")
        mean = float(np.arange(p.size) @ p)
        if abs(mean - self.n_bar) > 1e-10 * max(1.0, abs(mean)):
            raise ValueError(
                f"stated mean {self.n_bar!r} disagrees with the "
                f"distribution mean {mean!r}"
            )


@dataclass(frozen=True)
class PoissonDeviation:
    """Deviation delta_n from the Poisson distribution of equal mean."""

    delta: np.ndarray
    max_abs: float


@dataclass(frozen=True)
class PeakResult:
    """Location and height of the g^(2) maximum along the pump axis.

    ``P_star`` is in units of gamma_a.  ``bracket`` is the final search
    interval; ``converged`` is False when the coarse scan put the maximum
    on the edge of the scan range instead of bracketing it.
    """

    P_star: float
    g2_max: float
    bracket: tuple[float, float]
    converged: bool


def photon_distribution(p, source: str) -> PhotonDistribution:
    """Validate probabilities and tag them with their provenance."""
    p = np.asarray(p, dtype=float)
    n_bar = float(np.arange(p.size) @ p)
    return PhotonDistribution(p=p, n_bar=n_bar, source=source)


def poisson_pmf(n_bar: float, count: int) -> np.ndarray:
    """Poisson probabilities for n = 0..count-1, computed in log space.

    Stable up to means of order 10^3, where the direct n_bar**n / n!
    form would overflow long before the probabilities become small.
    """
    if n_bar < 0:
        raise ValueError(f"mean must be nonnegative, got {n_bar!r}")
    if n_bar == 0.0:
        out = np.zeros(count)
        out[0] = 1.0
        return out
    n = np.arange(count)
    return np.exp(n * math.log(n_bar) - n_bar - gammaln(n + 1))


def poisson_deviation(dist: PhotonDistribution) -> PoissonDeviation:
    """Pointwise deviation of ``dist`` from the Poisson of equal mean."""
    delta = dist.p - poisson_pmf(dist.n_bar, dist.p.size)
    return PoissonDeviation(delta=delta, max_abs=float(np.max(np.abs(delta))))


# Moment inversion is an alternating series; beyond means of about 20 the
# cancellation eats all double-precision digits, so the operation refuses
# to start there.
_INVERSION_MEAN_CAP = 20.0
_EPS = np.finfo(float).eps


def distribution_from_moments(
    series: CorrelatorSeries, error_tol: float = 1e-8
) -> PhotonDistribution:
    """Invert factorial moments into p(n).

    Uses p(n) = sum_{m >= n} (-1)^(m-n) N[m] / (n! (m-n)!) with
    compensated summation.  The alternating terms grow to exp(n_bar)
    before they decay, so each p(n) carries a cancellation error of about
    machine epsilon times the largest term; any p(n) whose estimated
    error exceeds ``error_tol`` aborts the inversion.

    Raises
    ------
    ValueError
        If the series mean exceeds the stability cap of 20.
    MomentInversionError
        If the cancellation error estimate exceeds ``error_tol``, or the
        inverted probabilities fail the distribution invariants.  The
        density-matrix solver is the fallback in that regime.
    """
    log_n = series.log_values
    n_bar = math.exp(log_n[1]) if np.isfinite(log_n[1]) else 0.0
    if n_bar > _INVERSION_MEAN_CAP:
        raise ValueError(
            f"moment inversion is unstable at n_bar = {n_bar:.3g} "
            f"(cap {_INVERSION_MEAN_CAP:g}); use the density-matrix solver"
        )
    top = len(log_n) - 1
    # p(n) is negligible a comfortable margin past the mean.
    count = min(top + 1, int(math.ceil(n_bar + 12.0 * math.sqrt(n_bar + 1.0))) + 25)

    m = np.arange(top + 1)
    log_fact = gammaln(m + 1.0)
    p = np.empty(count)
    worst = 0.0
    for n in range(count):
        with np.errstate(invalid="ignore"):
            log_terms = log_n[n:] - log_fact[n] - log_fact[: top + 1 - n]
        terms = np.exp(log_terms)
        terms[~np.isfinite(log_terms)] = 0.0
        signs = np.where(m[: top + 1 - n] % 2 == 0, 1.0, -1.0)
        p[n] = math.fsum(signs * terms)
        worst = max(worst, _EPS * math.fsum(terms))
        if worst > error_tol:
            raise MomentInversionError(
                f"cancellation error near p({n}) is about {worst:.2e}, "
                f"beyond the requested {error_tol:g}"
            )
    try:
        return photon_distribution(p, source="moment-inversion")
    except ValueError as exc:
        raise MomentInversionError(
            f"inverted probabilities are unphysical: {exc}"
        ) from exc


def _golden_maximum(f, t_lo, t_hi, rel_tol):
    """Golden-section maximum of ``f`` on [t_lo, t_hi] (t is log-pump)."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = t_lo, t_hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > rel_tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return (a, b, c, fc) if fc >= fd else (a, b, d, fd)


def _parabolic_polish(f, t, h):
    """One parabolic-vertex step from the symmetric stencil (t-h, t, t+h)."""
    f_lo, f_mid, f_hi = f(t - h), f(t), f(t + h)
    denom = f_lo - 2.0 * f_mid + f_hi
    if denom >= 0.0 or not math.isfinite(denom):
        return t, f_mid
    step = 0.5 * h * (f_lo - f_hi) / denom
    step = max(-h, min(h, step))
    t_new = t + step
    f_new = f(t_new)
    if f_new >= f_mid:
        return t_new, f_new
    return t, f_mid


def find_g2_peak(
    params: SystemParams,
    universal_mode: bool = False,
    pump_range: tuple[float, float] = (1e-2, 1e2),
    coarse_points: int = 64,
    rel_tol: float = 1e-6,
) -> PeakResult:
    """Locate the maximum of g^(2) along the pump axis.

    The pump in ``params`` is ignored; the search covers ``pump_range``
    (in units of gamma_a) on a log grid of ``coarse_points``, brackets
    the maximum, and refines it by golden section in log-pump to relative
    width ``rel_tol``, followed by a parabolic vertex polish.  Outside
    strong coupling the peak flattens and moves, so the search insists on
    kappa_sigma >= 10^3 gamma_a unless ``universal_mode`` is set.
    """
    if not universal_mode and params.kappa_sigma < 1e3 * params.gamma_a:
        raise ValueError(
            "peak search requires strong coupling "
            "(kappa_sigma >= 1e3 gamma_a) or universal_mode"
        )

    def g2_at(t: float) -> float:
        pump = math.exp(t) * params.gamma_a
        series = solve_recurrence(
            params.with_pump(pump), universal_mode=universal_mode
        )
        return coherence(series, 2)

    t_grid = np.log(np.geomspace(pump_range[0], pump_range[1], coarse_points))
    values = np.array([g2_at(t) for t in t_grid])
    best = int(np.argmax(values))
    if best == 0 or best == len(t_grid) - 1:
        # Monotone over the scan range: report the edge without refining.
        edge = math.exp(t_grid[best])
        return PeakResult(
            P_star=edge,
            g2_max=float(values[best]),
            bracket=(pump_range[0], pump_range[1]),
            converged=False,
        )

    a, b, t_best, f_best = _golden_maximum(
        g2_at, t_grid[best - 1], t_grid[best + 1], rel_tol
    )
    for h in (1e-3, 1e-4):
        t_best, f_best = _parabolic_polish(g2_at, t_best, h)
    return PeakResult(
        P_star=math.exp(t_best),
        g2_max=f_best,
        bracket=(math.exp(a), math.exp(b)),
        converged=True,
    )
