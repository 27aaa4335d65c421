"""Simulated single-qubit readout of the overlap factor.

An ancilla qubit entangled with the many-body state through a
controlled statistics shift ends up with x-basis outcome probabilities
P(+x) = (1 + Omega_N(delta))/2 and P(-x) = 1 - P(+x); the y channel
carries no fringe because the overlap is real.  The output distribution
is known in closed form, so finite-shot records are drawn directly as
Bernoulli trials rather than through a gate-level simulation.
"""
import math
from dataclasses import dataclass

import numpy as np

from .sectors import _check_count
from .statfactor import omega_closed_form


@dataclass(frozen=True)
class FringeRecord:
    """Finite-shot estimate of the overlap factor at one statistics shift.

    p_plus_x and p_plus_y are the observed outcome fractions;
    omega_estimate = 2 * p_plus_x - 1 and std_error is the plug-in
    binomial error 2 * sqrt(p(1-p)/shots).
    """

    delta: float
    p_plus_x: float
    p_plus_y: float
    shots: int
    omega_estimate: float
    std_error: float
    seed: int


def ideal_probabilities(n: int, delta: float) -> tuple[float, float, float]:
    """(P(+x), P(-x), P(+y)) for the readout of Omega_N(delta).

    P(+y) is exactly 1/2: the overlap has no imaginary part.
    """
    n = _check_count(n)
    omega = omega_closed_form(n, delta)
    p_plus_x = 0.5 * (1.0 + omega)
    return p_plus_x, 1.0 - p_plus_x, 0.5


def simulate_shots(n: int, delta: float, shots: int, seed: int) -> FringeRecord:
    """Draw `shots` Bernoulli outcomes in each of the x and y channels.

    Deterministic for a fixed seed: the generator first draws the x
    shots, then the y shots.
    """
    n = _check_count(n)
    if not isinstance(shots, (int, np.integer)) or shots < 1:
        raise ValueError(f"shots must be a positive integer, got {shots!r}")
    p_plus_x, _, p_plus_y = ideal_probabilities(n, delta)
    rng = np.random.default_rng(seed)
    x_frac = float((rng.random(shots) < p_plus_x).mean())
    y_frac = float((rng.random(shots) < p_plus_y).mean())
    return FringeRecord(
        delta=float(delta),
        p_plus_x=x_frac,
        p_plus_y=y_frac,
        shots=int(shots),
        omega_estimate=2.0 * x_frac - 1.0,
        std_error=2.0 * math.sqrt(x_frac * (1.0 - x_frac) / shots),
        seed=int(seed),
    )


def fringe_scan(n: int, delta_grid, shots: int, seed: int) -> list[FringeRecord]:
    """One record per grid point, with the record at index i seeded by seed + i.

    The per-index seed derivation is part of the contract: any slice of
    a scan can be reproduced point by point.
    """
    grid = [float(d) for d in delta_grid]
    if not grid:
        raise ValueError("delta grid must not be empty")
    return [simulate_shots(n, d, shots, seed + i) for i, d in enumerate(grid)]
