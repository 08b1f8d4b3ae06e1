"""Closed-form steady-state expressions for the one-emitter laser.

A two-level emitter is coupled with rate ``g`` to a single cavity mode.
The cavity decays at ``gamma_a``, the emitter decays at ``gamma_sigma`` and
is repumped incoherently at ``pump``.  Everything in this module is plain
algebra evaluated at machine precision: no truncation, no linear solves.
The formulas describe the limiting regimes (linear response, lasing
plateau, vanishing pump) against which the numerical solvers are checked.

All rates share one common unit.  The package convention is g = 1, so that
``gamma_a = 0.01`` reads as a cavity decay of one percent of the coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

__all__ = [
    "SystemParams",
    "DerivedRates",
    "derived_rates",
    "purcell_rate",
    "c1_linear_coefficient",
    "c2_lasing_coefficient",
    "jump",
    "jump_approx",
    "beta_factor",
    "strong_coupling_margin",
    "g0_coherence",
    "g0_2_strong_coupling",
    "emitter_population",
]


@dataclass(frozen=True)
class SystemParams:
    """Physical rates of the incoherently pumped one-emitter laser.

    Attributes
    ----------
    g : float
        Emitter-cavity coupling rate.  ``g = 0`` (decoupled cavity) is
        accepted so limiting cases can be probed.
    gamma_a : float
        Cavity decay rate, strictly positive.
    gamma_sigma : float
        Emitter decay rate into non-cavity modes.
    pump : float
        Incoherent pump rate acting on the emitter.
    """

    g: float
    gamma_a: float
    gamma_sigma: float = 0.0
    pump: float = 0.0

    def __post_init__(self):
        for name in ("g", "gamma_a", "gamma_sigma", "pump"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite number, got {value!r}")
        if self.g < 0:
            raise ValueError(f"g must be nonnegative, got {self.g}")
        if self.gamma_a <= 0:
            raise ValueError(f"gamma_a must be positive, got {self.gamma_a}")
        if self.gamma_sigma < 0:
            raise ValueError(f"gamma_sigma must be nonnegative, got {self.gamma_sigma}")
        if self.pump < 0:
            raise ValueError(f"pump must be nonnegative, got {self.pump}")

    @classmethod
    def from_dimensionless(cls, pump, gamma_sigma, cavity_decay=1e-2, g=1.0):
        """Build parameters from rates given in cavity-decay units.

        ``pump`` and ``gamma_sigma`` are multiples of the cavity decay,
        ``cavity_decay`` is the ratio gamma_a / g.  This mirrors how the
        operating regimes are usually quoted.
        """
        gamma_a = cavity_decay * g
        return cls(
            g=g,
            gamma_a=gamma_a,
            gamma_sigma=gamma_sigma * gamma_a,
            pump=pump * gamma_a,
        )

    @property
    def gamma_total(self):
        """Total emitter dephasing-free width gamma_sigma + pump."""
        return self.gamma_sigma + self.pump

    @property
    def kappa_sigma(self):
        """Cavity-enhanced emitter decay rate 4 g^2 / gamma_a."""
        return 4.0 * self.g * self.g / self.gamma_a

    @property
    def pump_dimless(self):
        """Pump in units of the cavity decay."""
        return self.pump / self.gamma_a

    @property
    def gamma_dimless(self):
        """Emitter decay in units of the cavity decay."""
        return self.gamma_sigma / self.gamma_a

    def with_pump(self, pump):
        """Copy of the parameters with a different pump rate."""
        return replace(self, pump=pump)

    def rescaled(self, unit):
        """Copy with every rate divided by ``unit`` (a positive rate)."""
        if unit <= 0:
            raise ValueError(f"unit must be positive, got {unit}")
        return SystemParams(
            g=self.g / unit,
            gamma_a=self.gamma_a / unit,
            gamma_sigma=self.gamma_sigma / unit,
            pump=self.pump / unit,
        )


@dataclass(frozen=True)
class DerivedRates:
    """Bundle of derived quantities evaluated for one parameter set."""

    kappa_sigma: float
    gamma_total: float
    c1: float
    c2: float
    beta: float
    jump: float
    strong_coupling_margin: float


def derived_rates(params: SystemParams) -> DerivedRates:
    """Evaluate all closed-form diagnostics for ``params`` at once."""
    return DerivedRates(
        kappa_sigma=params.kappa_sigma,
        gamma_total=params.gamma_total,
        c1=c1_linear_coefficient(params),
        c2=c2_lasing_coefficient(params),
        beta=beta_factor(params),
        jump=jump(params),
        strong_coupling_margin=strong_coupling_margin(params),
    )


def purcell_rate(params: SystemParams) -> float:
    """Emitter decay rate through the cavity, 4 g^2 / gamma_a."""
    return params.kappa_sigma


def c1_linear_coefficient(params: SystemParams) -> float:
    """Slope of the mean photon number at vanishing pump.

    n_a = C1 * pump in the linear regime, with
    C1 = kappa_sigma / ((kappa_sigma + gamma_sigma) (gamma_a + gamma_sigma)).
    """
    kappa = params.kappa_sigma
    if kappa == 0.0:
        return 0.0
    return kappa / (kappa + params.gamma_sigma) / (params.gamma_a + params.gamma_sigma)


def c2_lasing_coefficient(params: SystemParams) -> float:
    """Slope of the mean photon number deep in the lasing regime.

    n_a grows as C2 * pump with C2 = 1 / (2 gamma_a): half the pumped
    excitations are emitted into the cavity mode.
    """
    return 0.5 / params.gamma_a


def beta_factor(params: SystemParams, universal_mode: bool = False) -> float:
    """Fraction of emitter decay funnelled into the cavity mode at low pump.

    beta = [kappa_sigma / (kappa_sigma + gamma_sigma)] *
           [gamma_a / (gamma_a + gamma_sigma)].
    With ``universal_mode`` the cavity-feeding term is taken as perfect
    (kappa_sigma -> infinity) and only the second factor survives.
    """
    second = params.gamma_a / (params.gamma_a + params.gamma_sigma)
    if universal_mode:
        return second
    kappa = params.kappa_sigma
    if kappa == 0.0:
        return 0.0
    return kappa / (kappa + params.gamma_sigma) * second


def jump(params: SystemParams, universal_mode: bool = False) -> float:
    """Logarithmic intensity jump across the lasing transition.

    The linear and lasing asymptotes n_a = C1 * pump and n_a = C2 * pump
    are offset by jump = ln(C2 / C1) = ln(1 / (2 beta)).  Positive values
    mean the intensity steps up at threshold; the sign flips at
    gamma_sigma = gamma_a.  Infinite for a decoupled cavity (C1 = 0).
    """
    beta = beta_factor(params, universal_mode=universal_mode)
    if beta == 0.0:
        return math.inf
    return math.log(0.5 / beta)


def jump_approx(params: SystemParams) -> float:
    """Strong-coupling approximation of the intensity jump.

    ln((gamma_a + gamma_sigma) / (2 gamma_a)); exact when
    kappa_sigma >> gamma_sigma.
    """
    return math.log((params.gamma_a + params.gamma_sigma) / (2.0 * params.gamma_a))


def strong_coupling_margin(params: SystemParams) -> float:
    """Margin 4 g - |gamma_a - gamma_sigma| of the strong-coupling condition.

    Positive when the emitter-cavity doublets are split at vanishing pump.
    The margin ignores the pump-induced broadening, so it is a statement
    about the unpumped spectrum only.
    """
    return 4.0 * params.g - abs(params.gamma_a - params.gamma_sigma)


def g0_coherence(params: SystemParams, n: int, universal_mode: bool = False) -> float:
    """Zero-pump limit of the n-th order equal-time coherence g^(n).

    Product form
        g0(n) = prod_{k=2..n} k * [(kappa_sigma + gamma_sigma) /
                (kappa_sigma + gamma_sigma + (k-1) gamma_a)] *
                [(gamma_a + gamma_sigma) / ((2k-1) gamma_a + gamma_sigma)]
    with g0(1) = 1.  ``universal_mode`` drops the first bracket
    (kappa_sigma -> infinity).
    """
    if n < 1:
        raise ValueError(f"coherence order must be at least 1, got {n}")
    kappa = math.inf if universal_mode else params.kappa_sigma
    value = 1.0
    for k in range(2, n + 1):
        if math.isinf(kappa):
            ladder = 1.0
        else:
            width = kappa + params.gamma_sigma
            ladder = width / (width + (k - 1) * params.gamma_a)
        value *= (
            k
            * ladder
            * (params.gamma_a + params.gamma_sigma)
            / ((2 * k - 1) * params.gamma_a + params.gamma_sigma)
        )
    return value


def g0_2_strong_coupling(params: SystemParams) -> float:
    """Strong-coupling approximation of the zero-pump g^(2).

    2 (gamma_a + gamma_sigma) / (3 gamma_a + gamma_sigma), confined to
    [2/3, 2): antibunched only through the cavity-feeding prefactor.
    """
    return (
        2.0
        * (params.gamma_a + params.gamma_sigma)
        / (3.0 * params.gamma_a + params.gamma_sigma)
    )


def emitter_population(params: SystemParams, n_a: float, tol: float = 1e-9) -> float:
    """Steady-state emitter excitation from the mean photon number.

    Rate balance on the emitter gives
        n_sigma = (pump - gamma_a * n_a) / (gamma_sigma + pump).
    Raises ValueError if the result falls outside [0, 1] by more than
    ``tol``, which flags an inconsistent ``n_a``.
    """
    if n_a < 0:
        raise ValueError(f"n_a must be nonnegative, got {n_a}")
    total = params.gamma_total
    if total == 0.0:
        # No pump and no emitter decay: the emitter relaxes through the
        # cavity alone and ends up in its ground state.
        return 0.0
    value = (params.pump - params.gamma_a * n_a) / total
    if value < -tol or value > 1.0 + tol:
        raise ValueError(
            f"inconsistent photon number {n_a}: emitter population {value} "
            "falls outside [0, 1]"
        )
    return min(max(value, 0.0), 1.0)
