"""Brute-force steady state of the dissipative Jaynes-Cummings model.

Everything here works on the full two-level (x) Fock space with no physics
shortcuts: build the Liouvillian as a sparse superoperator, solve
L vec(rho) = 0 with the unit-trace condition replacing one redundant row,
and read observables straight off the density matrix.  It is the reference
the moment recurrence is checked against, and the only route to the photon
distribution when moment inversion becomes ill-conditioned.

Basis convention, fixed so matrix dumps stay comparable: product state
index k = s * (n_max + 1) + n with emitter state s (0 ground, 1 excited)
and photon number n.  Density matrices are vectorized column-major.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sparse
from scipy.sparse.linalg import splu

from .analytics import SystemParams
from .errors import ResourceLimitError, SingularSystemError, TruncationError

__all__ = [
    "TruncatedSpace",
    "SteadyStateDensityMatrix",
    "Observables",
    "cavity_operator",
    "emitter_operator",
    "hamiltonian",
    "build_liouvillian",
    "steady_state",
    "observables",
    "auto_truncate",
    "steady_state_auto",
    "write_matrix_entries",
]


@dataclass(frozen=True)
class TruncatedSpace:
    """Two-level emitter times a Fock space cut at ``n_max`` photons."""

    n_max: int

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be at least 1, got {self.n_max}")

    @property
    def dim(self):
        return 2 * (self.n_max + 1)


def cavity_operator(space: TruncatedSpace):
    """Annihilation operator a on the product space (csr)."""
    levels = space.n_max + 1
    a = sparse.diags(np.sqrt(np.arange(1.0, levels)), 1, format="csr")
    return sparse.kron(sparse.identity(2, format="csr"), a, format="csr")

def emitter_operator(space: TruncatedSpace):
    """Emitter lowering operator sigma on the product space (csr)."""
    lower = sparse.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    return sparse.kron(lower, sparse.identity(space.n_max + 1, format="csr"),
                       format="csr")


def hamiltonian(params: SystemParams, space: TruncatedSpace):
    """Resonant Jaynes-Cummings coupling g (sigma^dag a + a^dag sigma)."""
    a = cavity_operator(space)
    sm = emitter_operator(space)
    return (params.g * (sm.T @ a + a.T @ sm)).tocsr()


def _dissipator(c, rate, identity):
    """Vectorized Lindblad term (rate/2)(2 c . c^dag - {c^dag c, .})."""
    cdc = (c.conj().T @ c).tocsr()
    return (rate / 2.0) * (
        2.0 * sparse.kron(c.conj(), c)
        - sparse.kron(identity, cdc)
        - sparse.kron(cdc.T, identity)
    )


def build_liouvillian(params: SystemParams, space: TruncatedSpace):
    """Sparse Liouvillian acting on column-major vectorized density matrices.

    d rho/dt = -i[H, rho] + (gamma_a/2) L_a + (gamma_sigma/2) L_sigma
               + (pump/2) L_sigma^dag, with L_c rho = 2 c rho c^dag
               - c^dag c rho - rho c^dag c.
    """
    a = cavity_operator(space)
    sm = emitter_operator(space)
    H = hamiltonian(params, space)
    identity = sparse.identity(space.dim, format="csr")
    L = -1j * (sparse.kron(identity, H) - sparse.kron(H.T, identity))
    L = L + _dissipator(a, params.gamma_a, identity)
    L = L + _dissipator(sm, params.gamma_sigma, identity)
    L = L + _dissipator(sm.T.tocsr(), params.pump, identity)
    return L.tocsr()


@dataclass
class SteadyStateDensityMatrix:
    """Solved steady state with its solve residual attached.

    ``entries`` is the dense Hermitian matrix in the product basis;
    ``residual`` is the max-norm of L vec(rho) after normalization.
    """

    entries: np.ndarray
    n_max: int
    residual: float
    params: SystemParams = field(repr=False, default=None)

    @property
    def dim(self):
        return self.entries.shape[0]

    def trace(self):
        return float(np.real(np.trace(self.entries)))

    def photon_distribution(self):
        """p(n) summed over the emitter state."""
        diag = np.real(np.diag(self.entries))
        levels = self.n_max + 1
        return diag[:levels] + diag[levels:]

    def emitter_excitation(self):
        """Occupation of the excited emitter state."""
        levels = self.n_max + 1
        return float(np.sum(np.real(np.diag(self.entries))[levels:]))

    def hermiticity_defect(self):
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    @cached_property
    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.entries)[0])

    def tail_weight(self):
        """Population of the two highest Fock levels, the truncation gauge."""
        return float(np.sum(self.photon_distribution()[-2:]))

    def validate(self, positivity_tol=1e-9, hermiticity_tol=1e-10,
                 trace_tol=1e-12, tail_tol=None):
        """Raise TruncationError if the state fails its structural checks."""
        defects = []
        if abs(self.trace() - 1.0) > trace_tol:
            defects.append(f"trace deviates by {abs(self.trace() - 1.0):.3e}")
        if self.hermiticity_defect() > hermiticity_tol:
            defects.append(f"hermiticity defect {self.hermiticity_defect():.3e}")
        if self.min_eigenvalue < -positivity_tol:
            defects.append(f"negative eigenvalue {self.min_eigenvalue:.3e}")
        if tail_tol is not None and self.tail_weight() >= tail_tol:
            defects.append(f"truncation tail {self.tail_weight():.3e}")
        if defects:
            raise TruncationError("; ".join(defects))


def steady_state(L, space: TruncatedSpace, params: SystemParams | None = None,
                 tail_tol: float | None = 1e-8) -> SteadyStateDensityMatrix:
    """Null vector of ``L`` with unit trace, as a density matrix.

    The first row of L (redundant at steady state) is replaced by the
    trace functional, scaled to the mean magnitude of the Liouvillian
    entries so the solve stays well conditioned.  One step of iterative
    refinement polishes the LU solution; the result is symmetrized and
    its residual ||L vec(rho)||_inf recorded.
    """
    dim = space.dim
    size = dim * dim
    if L.shape != (size, size):
        raise ValueError(f"Liouvillian shape {L.shape} does not match {size}")

    coo = L.tocoo()
    keep = coo.row != 0
    weight = float(np.abs(coo.data).mean())
    if weight == 0.0 or not math.isfinite(weight):
        raise SingularSystemError("Liouvillian is empty or non-finite")
    trace_cols = np.arange(dim) * (dim + 1)
    rows = np.concatenate([coo.row[keep], np.zeros(dim, dtype=coo.row.dtype)])
    cols = np.concatenate([coo.col[keep], trace_cols])
    data = np.concatenate([coo.data[keep], np.full(dim, weight, dtype=complex)])
    constrained = sparse.csc_matrix((data, (rows, cols)), shape=(size, size))

    b = np.zeros(size, dtype=complex)
    b[0] = weight
    try:
        lu = splu(constrained)
        x = lu.solve(b)
        x += lu.solve(b - constrained @ x)
    except RuntimeError as exc:
        raise SingularSystemError(f"steady-state solve failed: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise SingularSystemError("steady-state solve returned non-finite values")

    rho = x.reshape((dim, dim), order="F")
    rho = 0.5 * (rho + rho.conj().T)
    trace = float(np.real(np.trace(rho)))
    if not math.isfinite(trace) or abs(trace) < 1e-12:
        raise SingularSystemError(f"steady state has unusable trace {trace:.3e}")
    rho /= trace

    residual = float(np.max(np.abs(L @ rho.reshape(-1, order="F"))))
    state = SteadyStateDensityMatrix(
        entries=rho, n_max=space.n_max, residual=residual, params=params
    )
    if tail_tol is not None and state.tail_weight() >= tail_tol:
        raise TruncationError(
            f"tail weight {state.tail_weight():.3e} exceeds {tail_tol:.1e}; "
            "increase n_max"
        )
    return state


@dataclass(frozen=True)
class Observables:
    """Field and emitter observables extracted from one steady state."""

    n_a: float
    n_sigma: float
    intensity: float
    factorial_moments: np.ndarray
    p: np.ndarray

    def coherence(self, n: int) -> float:
        """g^(n) from the stored factorial moments."""
        if not 1 <= n < len(self.factorial_moments):
            raise ValueError(f"order must lie in [1, {len(self.factorial_moments) - 1}]")
        if self.n_a == 0.0:
            raise ZeroDivisionError("g^(n) is undefined for an empty cavity")
        return float(self.factorial_moments[n] / self.n_a**n)


def observables(state: SteadyStateDensityMatrix, k_max: int = 4) -> Observables:
    """Populations and normally ordered factorial moments up to ``k_max``."""
    p = state.photon_distribution()
    n = np.arange(p.size, dtype=float)
    moments = np.empty(k_max + 1)
    weights = np.ones_like(n)
    moments[0] = float(np.sum(p))
    for k in range(1, k_max + 1):
        weights = weights * np.clip(n - (k - 1), 0.0, None)
        moments[k] = float(np.dot(weights, p))
    n_a = moments[1] if k_max >= 1 else float(np.dot(n, p))
    gamma_a = state.params.gamma_a if state.params is not None else math.nan
    return Observables(
        n_a=n_a,
        n_sigma=state.emitter_excitation(),
        intensity=gamma_a * n_a,
        factorial_moments=moments,
        p=p,
    )


def _auto_solve(params: SystemParams, tail_tol: float, start: int | None,
                ceiling: int):
    """Double the cutoff until the tail is quiet and n_a has settled."""
    if not 0.0 < tail_tol <= 1e-3:
        raise ValueError(f"tail_tol must lie in (0, 1e-3], got {tail_tol}")
    n_max = start if start is not None else max(
        8, math.ceil(2.0 * params.pump / params.gamma_a)
    )
    previous = None
    while n_max <= ceiling:
        space = TruncatedSpace(n_max)
        state = steady_state(build_liouvillian(params, space), space,
                             params=params, tail_tol=None)
        n_a = float(np.dot(np.arange(n_max + 1.0), state.photon_distribution()))
        if previous is not None:
            prev_space, prev_state, prev_na = previous
            if prev_state.tail_weight() < tail_tol and (
                abs(n_a - prev_na) <= 1e-8 * max(abs(n_a), 1e-300)
            ):
                return prev_space, prev_state
        previous = (space, state, n_a)
        n_max *= 2
    raise ResourceLimitError(
        f"steady state not converged below the n_max ceiling of {ceiling}"
    )


def auto_truncate(params: SystemParams, tail_tol: float = 1e-10,
                  start: int | None = None, ceiling: int = 4096) -> TruncatedSpace:
    """Smallest power-of-two style cutoff that passes the tail checks."""
    space, _ = _auto_solve(params, tail_tol, start, ceiling)
    return space


def steady_state_auto(params: SystemParams, tail_tol: float = 1e-10,
                      start: int | None = None,
                      ceiling: int = 4096) -> SteadyStateDensityMatrix:
    """Steady state at an automatically validated truncation."""
    _, state = _auto_solve(params, tail_tol, start, ceiling)
    return state


def write_matrix_entries(matrix, path, header=()):
    """Dump nonzero matrix entries as 'row col re im' lines.

    Works for dense arrays and scipy sparse matrices alike; entries are
    written row-major so dumps are reproducible byte for byte.
    """
    if sparse.issparse(matrix):
        coo = matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        triples = zip(coo.row[order], coo.col[order], coo.data[order])
    else:
        dense = np.asarray(matrix)
        rows, cols = np.nonzero(dense)
        triples = zip(rows, cols, dense[rows, cols])
    with open(path, "w", encoding="ascii") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        for row, col, value in triples:
            value = complex(value)
            fh.write(f"{row} {col} {value.real!r} {value.imag!r}\n")
