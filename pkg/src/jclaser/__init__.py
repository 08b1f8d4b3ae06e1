"""Steady-state toolkit for the incoherently pumped one-emitter laser.

The package computes photon statistics of a single two-level emitter
strongly coupled to one cavity mode, pumped incoherently, and damped
by cavity and emitter decay.  Two independent engines are provided: a
factorial-moment recurrence that is fast and scales to large photon
numbers, and a brute-force density-matrix solve used as ground truth.
"""

__version__ = "0.1.0"

from .analytics import (
    DerivedRates,
    SystemParams,
    beta_factor,
    c1_linear_coefficient,
    c2_lasing_coefficient,
    derived_rates,
    emitter_population,
    g0_coherence,
    jump,
    jump_approx,
    purcell_rate,
    strong_coupling_margin,
)
from .correlators import (
    CorrelatorSeries,
    coherence,
    intensity,
    mean_photon_number,
    solve_recurrence,
)
from .errors import (
    ConvergenceError,
    MomentInversionError,
    NegativeMomentError,
    ResourceLimitError,
    SingularSystemError,
    TruncationError,
)
from .oracle import (
    Observables,
    SteadyStateDensityMatrix,
    TruncatedSpace,
    build_liouvillian,
    observables,
    steady_state,
    steady_state_auto,
    write_matrix_entries,
)
from .photon_stats import (
    PeakResult,
    PhotonDistribution,
    PoissonDeviation,
    distribution_from_moments,
    find_g2_peak,
    photon_distribution,
    poisson_deviation,
    poisson_pmf,
)
from .sweep import (
    SweepResult,
    SweepRow,
    SweepSpec,
    evaluate_point,
    run_sweep,
    write_csv,
    write_distribution,
    write_sidecar,
)

__all__ = [
    "__version__",
    "ConvergenceError",
    "CorrelatorSeries",
    "DerivedRates",
    "MomentInversionError",
    "NegativeMomentError",
    "Observables",
    "PeakResult",
    "PhotonDistribution",
    "PoissonDeviation",
    "ResourceLimitError",
    "SingularSystemError",
    "SteadyStateDensityMatrix",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "SystemParams",
    "TruncatedSpace",
    "TruncationError",
    "beta_factor",
    "build_liouvillian",
    "c1_linear_coefficient",
    "c2_lasing_coefficient",
    "coherence",
    "derived_rates",
    "distribution_from_moments",
    "emitter_population",
    "evaluate_point",
    "find_g2_peak",
    "g0_coherence",
    "intensity",
    "jump",
    "jump_approx",
    "mean_photon_number",
    "observables",
    "photon_distribution",
    "poisson_deviation",
    "poisson_pmf",
    "purcell_rate",
    "run_sweep",
    "solve_recurrence",
    "steady_state",
    "steady_state_auto",
    "strong_coupling_margin",
    "write_csv",
    "write_distribution",
    "write_matrix_entries",
    "write_sidecar",
]
