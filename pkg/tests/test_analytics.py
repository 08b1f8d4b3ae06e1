"""Closed-form rate algebra: unit conventions, limits, and identities."""

import math

import pytest

from jclaser.analytics import (
    SystemParams,
    beta_factor,
    c1_linear_coefficient,
    c2_lasing_coefficient,
    derived_rates,
    emitter_population,
    g0_2_strong_coupling,
    g0_coherence,
    jump,
    jump_approx,
    purcell_rate,
    strong_coupling_margin,
)


def test_from_dimensionless_unit_conventions():
    params = SystemParams.from_dimensionless(
        pump=3.0, gamma_sigma=0.5, cavity_decay=1e-2, g=2.0
    )
    assert params.g == 2.0
    assert params.gamma_a == pytest.approx(0.02)
    assert params.gamma_sigma == pytest.approx(0.01)
    assert params.pump == pytest.approx(0.06)
    assert params.pump_dimless == pytest.approx(3.0)
    assert params.gamma_dimless == pytest.approx(0.5)


def test_derived_properties():
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.002, pump=0.03)
    assert params.gamma_total == pytest.approx(0.032)
    assert params.kappa_sigma == pytest.approx(400.0)
    assert purcell_rate(params) == params.kappa_sigma


@pytest.mark.parametrize("field,value", [
    ("g", -1.0),
    ("gamma_a", 0.0),
    ("gamma_a", -0.5),
    ("gamma_sigma", -1e-9),
    ("pump", -2.0),
    ("pump", math.nan),
    ("g", math.inf),
])
def test_invalid_rates_rejected(field, value):
    kwargs = {"g": 1.0, "gamma_a": 0.01, "gamma_sigma": 0.0, "pump": 0.0}
    kwargs[field] = value
    with pytest.raises(ValueError):
        SystemParams(**kwargs)


def test_with_pump_and_rescaled():
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.02, pump=0.05)
    bumped = params.with_pump(0.07)
    assert bumped.pump == 0.07 and bumped.gamma_a == params.gamma_a
    scaled = params.rescaled(0.01)
    assert scaled.g == pytest.approx(100.0)
    # Dimensionless ratios are scale invariant.
    assert scaled.pump_dimless == pytest.approx(params.pump_dimless)
    assert scaled.gamma_dimless == pytest.approx(params.gamma_dimless)
    with pytest.raises(ValueError):
        params.rescaled(0.0)


def test_linear_coefficient_closed_form():
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.004, pump=0.0)
    kappa = params.kappa_sigma
    expected = kappa / ((kappa + 0.004) * (0.01 + 0.004))
    assert c1_linear_coefficient(params) == pytest.approx(expected, rel=1e-15)
    assert c2_lasing_coefficient(params) == pytest.approx(50.0)
    decoupled = SystemParams(g=0.0, gamma_a=0.01, gamma_sigma=0.004)
    assert c1_linear_coefficient(decoupled) == 0.0


def test_beta_factor_limits():
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.01)
    finite = beta_factor(params)
    ideal = beta_factor(params, universal_mode=True)
    assert ideal == pytest.approx(0.5)
    # The cavity-feeding factor can only lose excitations.
    assert finite < ideal
    assert beta_factor(SystemParams(g=0.0, gamma_a=0.01)) == 0.0


def test_jump_is_log_slope_ratio():
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.07)
    ratio = c2_lasing_coefficient(params) / c1_linear_coefficient(params)
    assert jump(params) == pytest.approx(math.log(ratio), rel=1e-14)
    # Exactly zero at equal decay rates once the feeding is ideal.
    balanced = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.01)
    assert jump(balanced, universal_mode=True) == 0.0
    assert jump(SystemParams(g=0.0, gamma_a=0.01)) == math.inf


def test_jump_sign_flips_at_equal_rates():
    low = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.001)
    high = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.1)
    assert jump(low) < 0.0 < jump(high)
    assert jump_approx(low) < 0.0 < jump_approx(high)


def test_jump_approx_matches_jump_in_strong_coupling():
    params = SystemParams(g=1.0, gamma_a=1e-3, gamma_sigma=5e-3)
    assert jump_approx(params) == pytest.approx(jump(params), abs=2e-6)
    assert jump_approx(params) == pytest.approx(math.log(6e-3 / 2e-3))


def test_strong_coupling_margin():
    params = SystemParams(g=1.0, gamma_a=0.03, gamma_sigma=0.01)
    assert strong_coupling_margin(params) == pytest.approx(4.0 - 0.02)


def test_zero_pump_coherence_product_form():
    params = SystemParams(g=1.0, gamma_a=1e-3, gamma_sigma=1e-3)
    assert g0_coherence(params, 1) == 1.0
    # Equal decay rates on an ideal feed sit exactly at Poisson.
    for n in range(2, 7):
        assert g0_coherence(params, n, universal_mode=True) == pytest.approx(
            1.0, abs=1e-15
        )
    # The finite cavity-feeding correction pulls slightly below.
    finite = g0_coherence(params, 5)
    assert 1.0 - 1e-5 < finite < 1.0
    with pytest.raises(ValueError):
        g0_coherence(params, 0)


def test_second_order_zero_pump_values():
    # Non-decaying emitter pins g2 at 2/3; huge emitter decay gives
    # thermal statistics g0(n) -> n!.
    quiet = SystemParams(g=1.0, gamma_a=1e-3, gamma_sigma=0.0)
    assert g0_coherence(quiet, 2, universal_mode=True) == pytest.approx(2 / 3)
    assert g0_2_strong_coupling(quiet) == pytest.approx(2 / 3)
    noisy = SystemParams(g=1.0, gamma_a=1e-3, gamma_sigma=10.0)
    assert g0_coherence(noisy, 4, universal_mode=True) == pytest.approx(
        math.factorial(4), rel=1e-2
    )


def test_g0_2_strong_coupling_matches_product_form():
    params = SystemParams(g=1.0, gamma_a=1e-3, gamma_sigma=3e-3)
    assert g0_2_strong_coupling(params) == pytest.approx(
        g0_coherence(params, 2, universal_mode=True), rel=1e-15
    )


def test_emitter_population_rate_balance():
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.01, pump=0.05)
    assert emitter_population(params, 0.0) == pytest.approx(0.05 / 0.06)
    expected = (0.05 - 0.01 * 2.0) / 0.06
    assert emitter_population(params, 2.0) == pytest.approx(expected)
    # Unpumped, undamped emitter relaxes through the cavity.
    bare = SystemParams(g=1.0, gamma_a=0.01)
    assert emitter_population(bare, 0.0) == 0.0


def test_emitter_population_rejects_inconsistent_input():
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.01, pump=0.05)
    with pytest.raises(ValueError):
        emitter_population(params, -1.0)
    with pytest.raises(ValueError):
        # Photon number far above what the pump can sustain.
        emitter_population(params, 100.0)


def test_derived_rates_bundle():
    params = SystemParams(g=1.0, gamma_a=0.01, gamma_sigma=0.03, pump=0.2)
    rates = derived_rates(params)
    assert rates.kappa_sigma == params.kappa_sigma
    assert rates.gamma_total == params.gamma_total
    assert rates.c1 == c1_linear_coefficient(params)
    assert rates.c2 == c2_lasing_coefficient(params)
    assert rates.beta == beta_factor(params)
    assert rates.jump == jump(params)
    assert rates.strong_coupling_margin == strong_coupling_margin(params)
