"""Exact enumeration over the N! ordering sectors of N particles on a line.

A sector is the region of configuration space with a fixed descending
order of coordinates; it is labeled by the permutation R with
x_{R(1)} > x_{R(2)} > ... > x_{R(N)}.  The two-body exchange generator
(1/2) * sum_{i<j} sgn(x_i - x_j) is constant on each sector; its value
is N(N-1)/4 minus the inversion number of R, so the eigenvalue
degeneracies form the Mahonian triangle a(n, N).  Everything here is
exact: eigenvalues are rationals with denominator 2, degeneracy counts
are big integers.
"""
import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import _kernels

#: Hard cap on operations that enumerate all N! sectors.  10! = 3,628,800
#: sectors is seconds of work; every further particle multiplies that.
SECTOR_ENUM_LIMIT = 10

_IMAG_TOL = 1e-12


class SectorCountLimitError(ValueError):
    """Raised when an operation would enumerate more than 10! sectors."""


def _check_count(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"particle count must be an integer, got {n!r}")
    if n < 1:
        raise ValueError(f"particle count must be >= 1, got {n}")
    return int(n)


def _check_enumerable(n: int) -> int:
    n = _check_count(n)
    if n > SECTOR_ENUM_LIMIT:
        raise SectorCountLimitError(
            f"refusing to enumerate {n}! sectors; the enumeration guard is "
            f"N <= {SECTOR_ENUM_LIMIT} ({SECTOR_ENUM_LIMIT}! = "
            f"{math.factorial(SECTOR_ENUM_LIMIT):,} sectors)")
    return n


def enumerate_sectors(n: int) -> Iterator[tuple[int, ...]]:
    """Yield the N! sector permutations of labels 1..N in lexicographic order."""
    n = _check_enumerable(n)
    return itertools.permutations(range(1, n + 1))


def sector_eigenvalue(perm: Sequence[int]) -> Fraction:
    """Exchange-generator eigenvalue of a sector, as an exact rational.

    `perm` lists particle labels by descending coordinate.  Each label
    pair i < j contributes +1/2 when i sits before j in the hierarchy
    and -1/2 otherwise, giving N(N-1)/4 minus the inversion number.
    """
    p = tuple(perm)
    n = len(p)
    if sorted(p) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm!r}")
    inv = sum(1 for i in range(n - 1) for j in range(i + 1, n) if p[i] > p[j])
    return Fraction(n * (n - 1), 4) - inv


def spectrum(n: int) -> list[Fraction]:
    """Sorted distinct generator eigenvalues: -N(N-1)/4 + m, m = 0..N(N-1)/2."""
    n = _check_count(n)
    g0 = -Fraction(n * (n - 1), 4)
    return [g0 + m for m in range(n * (n - 1) // 2 + 1)]


@functools.lru_cache(maxsize=None)
def _inversion_counts(n: int) -> np.ndarray:
    counts = _kernels.inversion_counts(n)
    counts.setflags(write=False)
    return counts


@functools.lru_cache(maxsize=None)
def eigenvalue_array(n: int) -> np.ndarray:
    """Generator eigenvalue of every sector, float64, lexicographic order.

    Half-integers up to N(N-1)/4 are exact in float64, so no precision
    is lost going through the array representation.
    """
    n = _check_enumerable(n)
    eig = n * (n - 1) / 4.0 - _inversion_counts(n)
    eig.setflags(write=False)
    return eig


def omega_bruteforce(n: int, delta: float) -> float:
    """Ground-truth overlap factor: average of e^{-i delta g} over all sectors.

    The imaginary part must cancel (the spectrum is symmetric about 0);
    it is checked against 1e-12 and discarded.
    """
    n = _check_enumerable(n)
    delta = float(delta)
    if not math.isfinite(delta):
        raise ValueError(f"statistics shift must be finite, got {delta!r}")
    phases = np.exp(-1j * delta * eigenvalue_array(n))
    mean = complex(phases.mean())
    if abs(mean.imag) > _IMAG_TOL:
        raise ArithmeticError(
            f"sector average of phases has imaginary part {mean.imag:.3e} "
            f"(expected |Im| <= {_IMAG_TOL})")
    return mean.real


@dataclass(frozen=True)
class DegeneracyRow:
    """Exact eigenvalue multiplicities a(0, N) .. a(N(N-1)/2, N)."""

    n_particles: int
    counts: tuple[int, ...]

    def __post_init__(self):
        n = _check_count(self.n_particles)
        expected = n * (n - 1) // 2 + 1
        if len(self.counts) != expected:
            raise ValueError(
                f"degeneracy row for N={n} must have {expected} entries, "
                f"got {len(self.counts)}")

    def validate(self) -> None:
        """Check the row invariants exactly (sum N!, palindrome, a(0)=1)."""
        n = self.n_particles
        if sum(self.counts) != math.factorial(n):
            raise ValueError(f"row sum != {n}! for N={n}")
        if self.counts != self.counts[::-1]:
            raise ValueError(f"row for N={n} is not palindromic")
        if self.counts[0] != 1:
            raise ValueError(f"a(0, {n}) != 1")


def degeneracy_recursive(n: int) -> DegeneracyRow:
    """Build a(., N) by the windowed recurrence a(n,N) = sum a(n-k, N-1), k=0..N-1.

    Polynomial cost, exact big integers; valid for any N (counts exceed
    64-bit range well before N = 30).
    """
    n = _check_count(n)
    row = [1]
    for m in range(2, n + 1):
        prefix = [0]
        for v in row:
            prefix.append(prefix[-1] + v)
        length = m * (m - 1) // 2 + 1
        prev_len = len(row)
        new = []
        for k in range(length):
            lo = max(0, k - (m - 1))
            hi = min(k, prev_len - 1)
            new.append(prefix[hi + 1] - prefix[lo])
        row = new
    return DegeneracyRow(n, tuple(row))


def degeneracy_bruteforce(n: int) -> DegeneracyRow:
    """Histogram of sector eigenvalues from full enumeration (oracle, N <= 10)."""
    n = _check_enumerable(n)
    counts = np.bincount(_inversion_counts(n), minlength=n * (n - 1) // 2 + 1)
    # index m corresponds to eigenvalue -N(N-1)/4 + m, i.e. inversion
    # number N(N-1)/2 - m; reverse to index by m
    return DegeneracyRow(n, tuple(int(c) for c in counts[::-1]))


#: Closed-form columns a(idx, N) of the degeneracy triangle, idx = 0..5.
#: The idx = 5 form only holds for N >= 5: at N = 4 it yields 2 while the
#: true count (enumeration, which is authoritative) is 3.
_POLYNOMIALS = (
    lambda n: Fraction(1),
    lambda n: Fraction(n - 1),
    lambda n: Fraction((n + 1) * (n - 2), 2),
    lambda n: Fraction(n * (n * n - 7), 6),
    lambda n: Fraction(n * (n + 1) * (n * n + n - 14), 24),
    lambda n: Fraction((n - 1) * (n + 6) * (n ** 3 - 9 * n - 20), 120),
)


def degeneracy_polynomial(idx: int, n: int) -> int:
    """Evaluate the closed-form expression for column idx of the triangle.

    Returns 0 when idx exceeds N(N-1)/2 (the eigenvalue does not exist).
    Closed forms exist for idx = 0..5 only.
    """
    if not 0 <= idx <= 5:
        raise ValueError(f"no closed form for column {idx}; supported idx = 0..5")
    n = _check_count(n)
    if idx > n * (n - 1) // 2:
        return 0
    value = _POLYNOMIALS[idx](n)
    if value.denominator != 1:
        raise ArithmeticError(
            f"closed form a({idx}, {n}) = {value} is not an integer")
    return int(value)


def moments_exact(n: int, order: int) -> Fraction:
    """Exact sector-average moment (1/N!) * sum_R g_R^order.

    Odd orders vanish identically (spectrum symmetric about 0); the
    cancellation happens in exact rational arithmetic, not by shortcut.
    """
    n = _check_enumerable(n)
    if not isinstance(order, (int, np.integer)) or order < 0:
        raise ValueError(f"moment order must be a nonnegative integer, got {order!r}")
    if order > 12:
        raise ValueError(f"moment order {order} > 12 not supported by the "
                         "brute-force path")
    counts = degeneracy_bruteforce(n).counts
    base = n * (n - 1)  # index m has eigenvalue (4m - base)/4
    total = 0
    for m, a in enumerate(counts):
        total += a * (4 * m - base) ** order
    return Fraction(total, 4 ** order * math.factorial(n))
