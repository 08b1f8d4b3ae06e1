"""Moment recurrence against frozen high-precision references.

The reference values were produced by an independent solver: the full
master equation restricted to its conserved-phase sector, assembled in
mpmath rational arithmetic and solved with 40-80 significant digits at
Fock cutoffs far past the distribution tail.  They are exact to well
beyond the 16 digits quoted.
"""

import math

import numpy as np
import pytest

from jclaser.analytics import SystemParams
from jclaser.correlators import (
    coherence,
    default_truncation,
    intensity,
    mean_photon_number,
    solve_recurrence,
)

# Columns: gamma_a (units of g), gamma_sigma and pump (units of gamma_a),
# then n_a, g2, g3, g4.
REFERENCE = [
    (1e-3, 1.0, 0.5,
     0.2283007410033033, 1.058883622017661, 1.139231552403788,
     1.23395580684392),
    (1e-3, 1.0, 3.0,
     1.251148476011802, 1.097887257345641, 1.246763191897222,
     1.440010350324182),
    (1e-3, 1.0, 10.0,
     4.518578515772488, 1.031666244603269, 1.082349036597652,
     1.147882498941238),
    (1e-3, 1.0, 87.0662,
     43.03214155132719, 1.000404769125006, 1.001192345448417,
     1.002342899022128),
    (1e-3, 0.3, 20.0,
     9.850025350970077, 1.004114134917303, 1.011252953573274,
     1.020741925975571),
    (1e-1, 1.0, 30.0,
     13.33751174665957, 1.002045788740148, 1.005320561307441,
     1.009232063445816),
    (5e-2, 0.0, 20.0,
     9.881296044182543, 1.001872740179347, 1.0048540903332,
     1.00845992255609),
    (1e-2, 1.0, 50.0,
     24.46812500018502, 1.001227826436609, 1.003563833017918,
     1.006908624822881),
]

# Same solver with the cavity-feeding correction removed exactly
# (rates in gamma_a units, fixed cutoff 4096, 150 digits).
UNIVERSAL_REFERENCE = [
    (1.0, 0.5, 0.2283008203793392, 1.05888389645222),
    (1.0, 3.0, 1.251149696104999, 1.097887516348627),
    (1.0, 10.0, 4.51859199016967, 1.031666355090585),
    (1.0, 87.0662, 43.033099999999997, 1.000405000908972),
    (0.3, 20.0, 9.850074320511648, 1.004114362776175),
    (0.0, 4.5111, 2.300586652781798, 1.018206375685384),
]


@pytest.mark.parametrize(
    "gamma_a,gamma_sigma,pump,n_a,g2,g3,g4", REFERENCE
)
def test_matches_master_equation(gamma_a, gamma_sigma, pump, n_a, g2, g3, g4):
    params = SystemParams.from_dimensionless(
        pump=pump, gamma_sigma=gamma_sigma, cavity_decay=gamma_a
    )
    series = solve_recurrence(params)
    assert mean_photon_number(series) == pytest.approx(n_a, rel=1e-10)
    assert coherence(series, 2) == pytest.approx(g2, rel=1e-10)
    assert coherence(series, 3) == pytest.approx(g3, rel=1e-10)
    assert coherence(series, 4) == pytest.approx(g4, rel=1e-10)


@pytest.mark.parametrize("gamma_sigma,pump,n_a,g2", UNIVERSAL_REFERENCE)
def test_universal_matches_independent_sweep(gamma_sigma, pump, n_a, g2):
    params = SystemParams.from_dimensionless(pump=pump, gamma_sigma=gamma_sigma)
    series = solve_recurrence(params, universal_mode=True)
    assert mean_photon_number(series) == pytest.approx(n_a, rel=1e-10)
    assert coherence(series, 2) == pytest.approx(g2, rel=1e-10)


def test_universal_is_the_strong_coupling_limit():
    # kappa_sigma = 4e12 gamma_a leaves corrections around 1e-11.
    params = SystemParams.from_dimensionless(
        pump=3.0, gamma_sigma=1.0, cavity_decay=1e-6
    )
    finite = solve_recurrence(params)
    ideal = solve_recurrence(params, universal_mode=True)
    assert mean_photon_number(finite) == pytest.approx(
        mean_photon_number(ideal), rel=1e-9
    )
    assert coherence(finite, 2) == pytest.approx(
        coherence(ideal, 2), rel=1e-9
    )


def test_universal_mode_is_scale_invariant_bitwise():
    # Identical dimensionless inputs must give identical outputs no
    # matter the absolute rate scale.
    a = SystemParams(g=1.0, gamma_a=1e-3, gamma_sigma=2e-3, pump=5e-3)
    b = SystemParams(g=40.0, gamma_a=0.7, gamma_sigma=1.4, pump=3.5)
    series_a = solve_recurrence(a, universal_mode=True)
    series_b = solve_recurrence(b, universal_mode=True)
    assert np.array_equal(series_a.log_values, series_b.log_values)


def test_vacuum_without_pump():
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.01, pump=0.0)
    series = solve_recurrence(params)
    assert series.log_values[0] == 0.0
    assert np.all(np.isneginf(series.log_values[1:]))
    assert mean_photon_number(series) == 0.0
    assert intensity(series) == 0.0
    with pytest.raises(ZeroDivisionError):
        coherence(series, 2)


def test_vacuum_when_decoupled():
    params = SystemParams(g=0.0, gamma_a=0.01, gamma_sigma=0.0, pump=0.05)
    series = solve_recurrence(params)
    assert mean_photon_number(series) == 0.0


def test_default_truncation_scales_with_pump():
    assert default_truncation(0.0) == 32
    assert default_truncation(1.0) == 32
    assert default_truncation(100.0) == 400
    assert default_truncation(101.0) == 8 * math.ceil(101.0 / 2.0)


def test_requested_order_validation():
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.01, pump=0.01)
    with pytest.raises(ValueError):
        solve_recurrence(params, n_max=1)


def test_refinement_doubles_past_the_request():
    params = SystemParams.from_dimensionless(pump=2.0, gamma_sigma=1.0)
    series = solve_recurrence(params, n_max=8)
    assert series.stabilized_order == 8
    assert series.n_max >= 16
    assert np.all(series.ratios[1 : series.stabilized_order + 1] > 0.0)


def test_single_sweep_keeps_exact_cutoff():
    params = SystemParams.from_dimensionless(pump=2.0, gamma_sigma=1.0)
    series = solve_recurrence(params, n_max=24, refine=False)
    assert series.n_max == 24
    assert series.stabilized_order == 0
    refined = solve_recurrence(params, n_max=24)
    # The unrefined head still feels the closure; the refined one not.
    assert series.log_values[1] == pytest.approx(
        refined.log_values[1], abs=1e-9
    )


def test_precision_escalates_below_the_peak():
    # Deep in the lasing regime the backward sweep amplifies roundoff by
    # about exp(n_a); here n_a is 43, far past double precision.
    params = SystemParams.from_dimensionless(pump=87.0662, gamma_sigma=1.0)
    series = solve_recurrence(params, universal_mode=True)
    assert series.digits > 15
    gentle = solve_recurrence(
        SystemParams.from_dimensionless(pump=0.5, gamma_sigma=1.0)
    )
    assert gentle.digits == 15


def test_coherence_order_bounds():
    params = SystemParams.from_dimensionless(pump=1.0, gamma_sigma=1.0)
    series = solve_recurrence(params)
    with pytest.raises(ValueError):
        coherence(series, 0)
    with pytest.raises(ValueError):
        coherence(series, series.n_max + 1)


def test_intensity_is_decay_times_occupation():
    params = SystemParams.from_dimensionless(pump=2.0, gamma_sigma=1.0)
    series = solve_recurrence(params)
    assert intensity(series) == pytest.approx(
        params.gamma_a * mean_photon_number(series), rel=1e-15
    )


def test_moment_ratios_approach_the_lasing_root():
    # Far up the ladder the ratio N[n] / N[n-1] settles on pump / (2
    # gamma_a), the physical root of the recurrence characteristic
    # equation.
    params = SystemParams.from_dimensionless(pump=10.0, gamma_sigma=1.0)
    series = solve_recurrence(params)
    settled = series.ratios[series.stabilized_order]
    assert settled == pytest.approx(params.pump_dimless / 2.0, rel=2e-2)
