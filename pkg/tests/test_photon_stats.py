"""Distribution tools: Poisson references, moment inversion, peak search."""

import math

import numpy as np
import pytest
from scipy.special import gammaln

from jclaser.analytics import SystemParams
from jclaser.correlators import CorrelatorSeries, solve_recurrence
from jclaser.errors import MomentInversionError
from jclaser.oracle import steady_state_auto
from jclaser.photon_stats import (
    PhotonDistribution,
    distribution_from_moments,
    find_g2_peak,
    photon_distribution,
    poisson_deviation,
    poisson_pmf,
)
from jclaser.photon_stats import _golden_maximum, _parabolic_polish


def _poisson_series(n_bar: float, n_top: int) -> CorrelatorSeries:
    """Moment ladder of an exact coherent state: N[n] = n_bar^n."""
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.01, pump=0.01)
    logs = np.arange(n_top + 1) * math.log(n_bar)
    ratios = np.concatenate(([0.0], np.full(n_top, n_bar)))
    return CorrelatorSeries(
        params=params,
        n_max=n_top,
        universal_mode=False,
        log_values=logs,
        ratios=ratios,
        stabilized_order=n_top,
    )


def test_poisson_pmf_normalization_and_mean():
    p = poisson_pmf(3.7, 60)
    assert p.sum() == pytest.approx(1.0, abs=1e-12)
    assert float(np.arange(60) @ p) == pytest.approx(3.7, abs=1e-10)


def test_poisson_pmf_large_mean_stays_finite():
    p = poisson_pmf(800.0, 1200)
    assert np.all(np.isfinite(p))
    assert p.sum() == pytest.approx(1.0, abs=1e-9)


def test_poisson_pmf_zero_mean_and_validation():
    p = poisson_pmf(0.0, 5)
    assert p[0] == 1.0 and np.all(p[1:] == 0.0)
    with pytest.raises(ValueError):
        poisson_pmf(-0.1, 5)


def test_distribution_validation():
    with pytest.raises(ValueError):
        photon_distribution([0.7, 0.2], source="test")  # not normalized
    with pytest.raises(ValueError):
        photon_distribution([1.1, -0.1], source="test")  # negative entry
    with pytest.raises(ValueError):
        PhotonDistribution(
            p=np.array([0.5, 0.5]), n_bar=0.9, source="test"
        )  # stated mean disagrees
    dist = photon_distribution([0.5, 0.5], source="test")
    assert dist.n_bar == pytest.approx(0.5)


def test_inversion_recovers_coherent_state():
    series = _poisson_series(2.5, 80)
    dist = distribution_from_moments(series)
    expected = poisson_pmf(2.5, dist.p.size)
    assert np.max(np.abs(dist.p - expected)) < 1e-13
    assert poisson_deviation(dist).max_abs < 1e-13
    assert dist.source == "moment-inversion"


def test_inversion_matches_the_density_matrix():
    params = SystemParams.from_dimensionless(
        pump=2.0, gamma_sigma=1.0, cavity_decay=1e-3
    )
    inverted = distribution_from_moments(solve_recurrence(params))
    state = steady_state_auto(params, tail_tol=1e-12)
    direct = state.photon_distribution()
    count = min(inverted.p.size, direct.size)
    assert np.max(np.abs(inverted.p[:count] - direct[:count])) < 1e-10


def test_poisson_deviation_sums_to_zero():
    params = SystemParams.from_dimensionless(pump=1.0, gamma_sigma=1.0)
    dev = poisson_deviation(
        distribution_from_moments(solve_recurrence(params, universal_mode=True))
    )
    # Both distributions are normalized, so deviations cancel up to the
    # truncated Poisson tail.
    assert abs(float(np.sum(dev.delta))) < 1e-10
    assert dev.max_abs == pytest.approx(float(np.max(np.abs(dev.delta))))


def test_inversion_refuses_large_means():
    params = SystemParams.from_dimensionless(
        pump=50.0, gamma_sigma=1.0, cavity_decay=1e-2
    )
    series = solve_recurrence(params)
    with pytest.raises(ValueError, match="unstable"):
        distribution_from_moments(series)


def test_inversion_reports_cancellation_error():
    series = _poisson_series(6.0, 120)
    with pytest.raises(MomentInversionError, match="cancellation"):
        distribution_from_moments(series, error_tol=1e-18)


def test_golden_and_parabolic_find_an_analytic_maximum():
    t_star = 0.73105
    f = lambda t: 2.0 - (t - t_star) ** 2
    a, b, t, value = _golden_maximum(f, -2.0, 3.0, 1e-10)
    t, value = _parabolic_polish(f, t, 1e-4)
    assert t == pytest.approx(t_star, abs=1e-8)
    assert value == pytest.approx(2.0, abs=1e-14)


def test_parabolic_polish_never_worsens():
    f = lambda t: -abs(t)  # kink defeats the parabola model
    t, value = _parabolic_polish(f, 0.3, 0.1)
    assert value >= f(0.3)


@pytest.mark.parametrize("gamma_sigma,p_star,g2_max", [
    (1.0, 2.0938775635859326, 1.1028502473626427),
    (0.0, 4.510402947957938, 1.018206376350319),
])
def test_universal_peak_location(gamma_sigma, p_star, g2_max):
    params = SystemParams.from_dimensionless(pump=1.0, gamma_sigma=gamma_sigma)
    peak = find_g2_peak(params, universal_mode=True)
    assert peak.converged
    assert peak.P_star == pytest.approx(p_star, rel=1e-6)
    assert peak.g2_max == pytest.approx(g2_max, rel=1e-10)
    assert peak.bracket[0] <= peak.P_star <= peak.bracket[1]


def test_peak_requires_strong_coupling():
    weak = SystemParams.from_dimensionless(
        pump=1.0, gamma_sigma=1.0, cavity_decay=0.1
    )
    with pytest.raises(ValueError, match="strong coupling"):
        find_g2_peak(weak)


def test_peak_reports_edge_maxima_unconverged():
    params = SystemParams.from_dimensionless(pump=1.0, gamma_sigma=1.0)
    peak = find_g2_peak(
        params, universal_mode=True, pump_range=(10.0, 100.0),
        coarse_points=16,
    )
    assert not peak.converged
    assert peak.bracket == (10.0, 100.0)
    assert peak.P_star == pytest.approx(10.0)


def test_g2_flanks_are_monotone_around_the_peak():
    params = SystemParams.from_dimensionless(pump=1.0, gamma_sigma=1.0)
    peak = find_g2_peak(params, universal_mode=True)

    def g2(pump):
        series = solve_recurrence(
            params.with_pump(pump * params.gamma_a), universal_mode=True
        )
        return math.exp(
            series.log_values[2] - 2.0 * series.log_values[1]
        )

    rising = [g2(p) for p in np.geomspace(0.1, peak.P_star, 12)]
    falling = [g2(p) for p in np.geomspace(peak.P_star, 20.0, 12)]
    assert all(a <= b for a, b in zip(rising, rising[1:]))
    assert all(a >= b for a, b in zip(falling, falling[1:]))


def test_inverted_moments_match_forward_sums():
    # Push p(n) back through the factorial-moment definition.
    params = SystemParams.from_dimensionless(pump=3.0, gamma_sigma=1.0)
    series = solve_recurrence(params, universal_mode=True)
    dist = distribution_from_moments(series)
    n = np.arange(dist.p.size, dtype=float)
    for k in (1, 2, 3):
        kept = n >= k
        log_weights = gammaln(n[kept] + 1.0) - gammaln(n[kept] - k + 1.0)
        forward = float(np.exp(log_weights) @ dist.p[kept])
        assert forward == pytest.approx(series.value(k), rel=1e-9)
