"""The universal overlap factor for a shift of the exchange-statistics parameter.

For N hard-core particles on a line, shifting the statistics parameter
by delta multiplies state overlaps by the universal factor

    Omega_N(delta) = (1/N!) * prod_{k=2..N} sin(k delta/2) / sin(delta/2),

an even, 4*pi-periodic function with |Omega_N| <= 1.  This module
evaluates it by closed form, by recursion in N, and by the
degeneracy-weighted spectral sum, and provides its zero set, the
Gaussian small-shift approximation, and the interval on which that
approximation is trusted.

Every sine ratio is evaluated as a Chebyshev polynomial of the second
kind, sin(k t)/sin(t) = U_{k-1}(cos t), computed by the stable forward
three-term recurrence.  That removes the 0/0 at delta in {0, 2*pi}
analytically instead of branching on a tolerance, and dividing each
factor by k as it is accumulated keeps the running product in [-1, 1].
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .qsl import variance_g
from .sectors import DegeneracyRow, _check_count

FOUR_PI = 4.0 * math.pi

#: Magnitude of the leading-N coefficient of the fourth cumulant of the
#: exchange generator, -N(6N^4 + ...)/3600 ~ -N^5/600.  Sets the width
#: of the Gaussian trust interval.
ALPHA4_MAGNITUDE = Fraction(1, 600)

_MOD_TOL = 1e-9
_IMAG_TOL = 1e-12


def _check_shift(delta) -> float:
    delta = float(delta)
    if not math.isfinite(delta):
        raise ValueError(f"statistics shift must be finite, got {delta!r}")
    return delta


def canonical_shift(delta: float) -> float:
    """Map a shift to the fundamental domain [0, 4*pi); Omega_N is unchanged."""
    delta = _check_shift(delta)
    out = math.fmod(delta, FOUR_PI)
    if out < 0.0:
        out += FOUR_PI
    if out >= FOUR_PI:  # fmod rounding at the boundary
        out = 0.0
    return out


def omega_closed_form(n: int, delta: float) -> float:
    """Closed-form overlap factor, regular at every real delta."""
    n = _check_count(n)
    delta = _check_shift(delta)
    c = math.cos(0.5 * delta)
    result = 1.0
    u_prev = 1.0      # U_0(c)
    u = 2.0 * c       # U_1(c)
    for k in range(2, n + 1):
        result *= u / k  # |U_{k-1}| <= k, so |result| never exceeds 1
        u_prev, u = u, 2.0 * c * u - u_prev
    return result


def omega_closed_form_grid(n: int, deltas) -> np.ndarray:
    """Vectorized :func:`omega_closed_form` over an array of shifts."""
    n = _check_count(n)
    d = np.asarray(deltas, dtype=float)
    if not np.all(np.isfinite(d)):
        raise ValueError("statistics shifts must be finite")
    c = np.cos(0.5 * d)
    result = np.ones_like(c)
    u_prev = np.ones_like(c)
    u = 2.0 * c
    for k in range(2, n + 1):
        result = result * (u / k)
        u_prev, u = u, 2.0 * c * u - u_prev
    return result


def omega_recursion(n: int, delta: float) -> float:
    """Overlap factor via Omega_k = (1/k) U_{k-1}(cos(delta/2)) Omega_{k-1}."""
    n = _check_count(n)
    delta = _check_shift(delta)
    c = math.cos(0.5 * delta)
    omega = 1.0       # single particle: no exchange
    u_prev = 1.0
    u = 2.0 * c
    for k in range(2, n + 1):
        omega = (u / k) * omega
        u_prev, u = u, 2.0 * c * u - u_prev
    return omega


def omega_degeneracy_sum(n: int, delta: float, row: DegeneracyRow) -> float:
    """Overlap factor as the degeneracy-weighted average of spectral phases.

    `row` must be the multiplicity row for N; the imaginary part of the
    average must cancel (checked against 1e-12, then discarded).
    """
    n = _check_count(n)
    delta = _check_shift(delta)
    if row.n_particles != n:
        raise ValueError(
            f"degeneracy row is for N={row.n_particles}, not N={n}")
    n_fact = math.factorial(n)
    weights = np.array([float(Fraction(a, n_fact)) for a in row.counts])
    eigs = np.arange(len(row.counts)) - n * (n - 1) / 4.0
    mean = complex(np.sum(weights * np.exp(-1j * delta * eigs)))
    if abs(mean.imag) > _IMAG_TOL:
        raise ArithmeticError(
            f"degeneracy-weighted phase average has imaginary part "
            f"{mean.imag:.3e} (expected |Im| <= {_IMAG_TOL})")
    return mean.real


def _zero_value(k: int, m: int) -> float:
    return 2.0 * math.pi * k / m


def zero_fractions(n: int) -> list[Fraction]:
    """Zeros of Omega_N in (0, 2*pi) as exact fractions of 2*pi."""
    n = _check_count(n)
    return sorted({Fraction(k, m) for m in range(2, n + 1) for k in range(1, m)})


def zero_set(n: int) -> list[float]:
    """Sorted zeros {2*pi*k/m | m = 2..N, k = 1..m-1} of Omega_N in (0, 2*pi).

    A single particle has no exchange and hence no zeros: returns [].
    """
    return [_zero_value(f.numerator, f.denominator) for f in zero_fractions(n)]


def first_zero(n: int) -> float:
    """Smallest zero of Omega_N, exactly 2*pi/N; the exact orthogonality shift."""
    n = _check_count(n)
    if n < 2:
        raise ValueError("a single particle has no zeros: Omega_1 == 1")
    return _zero_value(1, n)


def gaussian_approx(n: int, delta: float) -> float:
    """Small-shift Gaussian decay exp[-(delta^2/2) * N(2N^2+3N-5)/72]."""
    n = _check_count(n)
    delta = _check_shift(delta)
    return math.exp(-0.5 * delta * delta * float(variance_g(n)))


@dataclass(frozen=True)
class TrustInterval:
    """Symmetric interval [-half_width, half_width] of validated approximation."""

    half_width: float
    threshold: float

    def __contains__(self, delta: float) -> bool:
        return abs(delta) <= self.half_width


def gaussian_trust_interval(n: int, t: float) -> TrustInterval:
    """Interval on which the Gaussian approximates Omega_N to relative error <= t.

    half_width = (ln(1+t) / (|alpha4| N^5))^(1/4) with |alpha4| = 1/600;
    it grows with t and shrinks as N^(-5/4).
    """
    n = _check_count(n)
    if n < 2:
        raise ValueError("trust interval requires N >= 2 (no exchange at N = 1)")
    t = float(t)
    if not (t > 0.0 and math.isfinite(t)):
        raise ValueError(f"threshold must be a positive finite real, got {t!r}")
    width = (math.log1p(t) / (float(ALPHA4_MAGNITUDE) * n ** 5)) ** 0.25
    return TrustInterval(half_width=width, threshold=t)


def asymptotic_indicator(delta: float) -> bool:
    """Whether |Omega_N| survives as N -> infinity: 1 at multiples of 2*pi, else 0.

    True iff delta is congruent to 0 (mod 2*pi) within 1e-9.
    """
    delta = _check_shift(delta)
    return abs(math.remainder(delta, 2.0 * math.pi)) <= _MOD_TOL
