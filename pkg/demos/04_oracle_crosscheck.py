"""Cross-checking the recurrence engine against the density-matrix solver.

The package computes photon statistics two independent ways: a fast
recurrence for the diagonal photon correlators, and a brute-force solver
that builds the full Liouvillian on a truncated emitter-photon space and
extracts the steady-state density matrix from its null space.  They share
no code beyond the parameter container, so agreement between them is a
real consistency check.  This script runs both engines over a spread of
parameter points, prints the relative deviations, checks the structural
invariants of the density matrix, verifies the steady-state flux balance,
and writes one density matrix to disk in a plain-text sparse format.

Run:  python3 demos/04_oracle_crosscheck.py
"""

from __future__ import annotations

import pathlib
import tempfile

import numpy as np

from jclaser import (
    SystemParams,
    coherence,
    mean_photon_number,
    observables,
    solve_recurrence,
    steady_state_auto,
    write_matrix_entries,
)

POINTS = (
    # (pump, gamma_sigma, cavity_decay): spread over weak/strong pump,
    # slow/fast emitter, and coupling quality.
    (0.3, 1.0, 1e-3),
    (3.0, 1.0, 1e-3),
    (10.0, 1.0, 1e-3),
    (3.0, 0.1, 1e-2),
    (3.0, 10.0, 1e-2),
    (20.0, 0.0, 5e-2),
    (1.0, 2.0, 1e-1),
)


def main() -> None:
    print("Engine comparison (pump, gamma_sigma in units of gamma_a;")
    print("cavity_decay in units of g):")
    print()
    print("        point".ljust(26) + "n_a".rjust(12) + "g2".rjust(12)
          + "dev(n_a)".rjust(12) + "dev(g2)".rjust(12))
    worst = 0.0
    last_state = None
    for pump, gamma_sigma, cavity_decay in POINTS:
        params = SystemParams.from_dimensionless(
            pump=pump, gamma_sigma=gamma_sigma, cavity_decay=cavity_decay
        )
        series = solve_recurrence(params)
        n_a = mean_photon_number(series)
        g2 = coherence(series, 2)

        state = steady_state_auto(params)
        state.validate()
        obs = observables(state, k_max=2)
        dev_n = abs(obs.n_a - n_a) / n_a
        dev_g2 = abs(obs.factorial_moments[2] / obs.n_a**2 - g2) / g2
        worst = max(worst, dev_n, dev_g2)
        label = f"P={pump:g}, gs={gamma_sigma:g}, ga={cavity_decay:g}"
        print(f"{label:<26}{n_a:12.6g}{g2:12.8f}{dev_n:12.2e}{dev_g2:12.2e}")
        last_state = (params, state, obs)
    print()
    print(f"Worst relative deviation across all points: {worst:.2e}")

    params, state, obs = last_state
    print()
    print("Structural invariants of the last density matrix "
          f"(n_max = {state.n_max}):")
    print(f"  trace               : {state.trace():.15f}")
    print(f"  hermiticity defect  : {state.hermiticity_defect():.2e}")
    print(f"  smallest eigenvalue : {state.min_eigenvalue:.2e}")
    print(f"  truncation tail     : {state.tail_weight():.2e}")
    print(f"  linear residual     : {state.residual:.2e}")

    print()
    print("Steady-state flux balance (pump into the emitter = emission out):")
    print()
    print("        point".ljust(26) + "pump flux".rjust(14)
          + "emission flux".rjust(15) + "imbalance".rjust(12))
    for pump, gamma_sigma, cavity_decay in POINTS:
        params = SystemParams.from_dimensionless(
            pump=pump, gamma_sigma=gamma_sigma, cavity_decay=cavity_decay
        )
        state = steady_state_auto(params)
        obs = observables(state, k_max=1)
        inflow = params.pump * (1.0 - obs.n_sigma)
        outflow = params.gamma_a * obs.n_a + params.gamma_sigma * obs.n_sigma
        rel = abs(inflow - outflow) / max(inflow, outflow)
        label = f"P={pump:g}, gs={gamma_sigma:g}, ga={cavity_decay:g}"
        print(f"{label:<26}{inflow:14.6g}{outflow:15.6g}{rel:12.2e}")

    out = pathlib.Path(tempfile.gettempdir()) / "rho_demo.txt"
    write_matrix_entries(
        state.entries,
        out,
        header=(
            f"steady state at pump = {params.pump!r}, "
            f"gamma_sigma = {params.gamma_sigma!r}, "
            f"gamma_a = {params.gamma_a!r}, g = {params.g!r}",
            f"basis: index k = s*(n_max+1) + n, emitter s in "
            f"{{0 ground, 1 excited}}, photon number n, n_max = {state.n_max}",
        ),
    )
    lines = out.read_text().splitlines()
    print()
    print(f"Wrote the last density matrix to {out} "
          f"({state.dim}x{state.dim}, {len(lines)} lines).")
    print("First entries:")
    for line in lines[:6]:
        print(f"  {line}")


if __name__ == "__main__":
    main()
