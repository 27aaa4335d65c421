"""Hot numeric kernels: sector enumeration and Metropolis walks.

Each kernel exists in two flavors that return bit-identical results:

* ``*_compiled`` — numba @njit version (None when numba is missing),
* ``*_python``   — interpreted version (for inversion counts a
  vectorized numpy implementation, for the walk the same scalar loop).

The module-level names without suffix are bound to the flavor selected
by :mod:`anyonflow._backend`.  All randomness is generated by callers
and passed in as arrays, so the kernels themselves are deterministic.
"""
import itertools
import math

import numpy as np

from ._backend import BACKEND, _numba_available, jit

# Acceptance-ratio window used while tuning the proposal step during
# burn-in; the walk targets ~40% acceptance.
TUNE_LO = 0.35
TUNE_HI = 0.45
TUNE_FACTOR = 1.2

_QUARTIC_ROOT_PI = math.pi ** 0.25

KIND_BOX = 0
KIND_HARMONIC = 1


# ---------------------------------------------------------------------------
# sector enumeration: inversion count of every permutation of 0..n-1 in
# lexicographic order
# ---------------------------------------------------------------------------

def _inversion_counts_loop(n, out):
    # next-permutation enumeration; out must have length n!
    perm = np.arange(n)
    idx = 0
    while True:
        c = 0
        for i in range(n - 1):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    c += 1
        out[idx] = c
        idx += 1
        # advance to the lexicographic successor
        i = n - 2
        while i >= 0 and perm[i] >= perm[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while perm[j] <= perm[i]:
            j -= 1
        perm[i], perm[j] = perm[j], perm[i]
        lo = i + 1
        hi = n - 1
        while lo < hi:
            perm[lo], perm[hi] = perm[hi], perm[lo]
            lo += 1
            hi -= 1
    return idx


def inversion_counts_python(n: int) -> np.ndarray:
    """Vectorized fallback: inversion counts in lexicographic order."""
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    i, j = np.triu_indices(n, 1)
    chunks = []
    it = itertools.permutations(range(n))
    while True:
        batch = list(itertools.islice(it, 200_000))
        if not batch:
            break
        arr = np.asarray(batch, dtype=np.int64)
        chunks.append((arr[:, i] > arr[:, j]).sum(axis=1, dtype=np.int64))
    return np.concatenate(chunks)


# ---------------------------------------------------------------------------
# Metropolis walk over |Psi_F|^2 for a Slater determinant of box or
# harmonic-oscillator orbitals
# ---------------------------------------------------------------------------

def _det_destructive(a):
    # row-pivoted elimination with sign tracking; clobbers `a`
    n = a.shape[0]
    det = 1.0
    for col in range(n):
        p = col
        big = abs(a[col, col])
        for r in range(col + 1, n):
            v = abs(a[r, col])
            if v > big:
                big = v
                p = r
        if big == 0.0:
            return 0.0
        if p != col:
            for c in range(col, n):
                t = a[col, c]
                a[col, c] = a[p, c]
                a[p, c] = t
            det = -det
        piv = a[col, col]
        det *= piv
        for r in range(col + 1, n):
            f = a[r, col] / piv
            for c in range(col + 1, n):
                a[r, c] -= f * a[col, c]
    return det


def _orbital_matrix(kind, occ, scale, x, a):
    # a[i, k] = phi_{occ[k]}(x[i]); orbitals indexed from 1 by energy
    n = x.shape[0]
    if kind == KIND_BOX:
        amp = math.sqrt(2.0 / scale)
        for i in range(n):
            for k in range(n):
                a[i, k] = amp * math.sin(occ[k] * math.pi * x[i] / scale)
    else:
        kmax = 0
        for k in range(n):
            if occ[k] > kmax:
                kmax = occ[k]
        norm = 1.0 / (_QUARTIC_ROOT_PI * math.sqrt(scale))
        for i in range(n):
            xi = x[i] / scale
            hm1 = norm * math.exp(-0.5 * xi * xi)  # ladder order 0
            hm2 = 0.0
            for k in range(n):
                if occ[k] == 1:
                    a[i, k] = hm1
            for m in range(1, kmax):
                h = xi * math.sqrt(2.0 / m) * hm1 - math.sqrt((m - 1.0) / m) * hm2
                hm2 = hm1
                hm1 = h
                for k in range(n):
                    if occ[k] == m + 1:
                        a[i, k] = h
    return a


def _make_density(orbital_fn, det_fn):
    def density(kind, occ, scale, contact_tol, x, a):
        # un-normalized |Psi_F|^2; zero outside support or within
        # contact_tol of a coincidence
        n = x.shape[0]
        if kind == KIND_BOX:
            for i in range(n):
                if x[i] <= 0.0 or x[i] >= scale:
                    return 0.0
        for i in range(n):
            for j in range(i + 1, n):
                if abs(x[i] - x[j]) < contact_tol:
                    return 0.0
        orbital_fn(kind, occ, scale, x, a)
        d = det_fn(a)
        return d * d

    return density


def _make_metropolis(density_fn):
    def metropolis(kind, occ, scale, contact_tol, x0, step0,
                   normals, uniforms, n_burn, thin, tune_interval, samples):
        # sequential chain; fills `samples` with every `thin`-th
        # post-burn-in configuration; returns (accepted post-burn-in
        # moves, final proposal step)
        n = x0.shape[0]
        n_samples = samples.shape[0]
        a = np.empty((n, n))
        x = x0.copy()
        xp = np.empty(n)
        p2 = density_fn(kind, occ, scale, contact_tol, x, a)
        step = step0
        total = normals.shape[0]
        acc_main = 0
        acc_win = 0
        kept = 0
        for s in range(total):
            for i in range(n):
                xp[i] = x[i] + step * normals[s, i]
            p2p = density_fn(kind, occ, scale, contact_tol, xp, a)
            if p2p > 0.0 and p2p >= p2 * uniforms[s]:
                for i in range(n):
                    x[i] = xp[i]
                p2 = p2p
                if s >= n_burn:
                    acc_main += 1
                else:
                    acc_win += 1
            if s < n_burn and (s + 1) % tune_interval == 0:
                rate = acc_win / tune_interval
                if rate > TUNE_HI:
                    step *= TUNE_FACTOR
                elif rate < TUNE_LO:
                    step /= TUNE_FACTOR
                acc_win = 0
            if s >= n_burn and (s - n_burn) % thin == thin - 1:
                for i in range(n):
                    samples[kept, i] = x[i]
                kept += 1
                if kept == n_samples:
                    break
        return acc_main, step

    return metropolis


def _counts_runner(loop):
    def run(n: int) -> np.ndarray:
        out = np.empty(math.factorial(n), dtype=np.int64)
        loop(n, out)
        return out

    return run


# ---------------------------------------------------------------------------
# flavor bindings
# ---------------------------------------------------------------------------

density_python = _make_density(_orbital_matrix, _det_destructive)
metropolis_loop_python = _make_metropolis(density_python)
inversion_counts_loop_python = _inversion_counts_loop

if _numba_available():
    _det_compiled = jit(_det_destructive)
    _orbitals_compiled = jit(_orbital_matrix)
    density_compiled = jit(_make_density(_orbitals_compiled, _det_compiled))
    metropolis_loop_compiled = jit(_make_metropolis(density_compiled))
    inversion_counts_loop_compiled = jit(_inversion_counts_loop)
    inversion_counts_compiled = _counts_runner(inversion_counts_loop_compiled)
else:
    density_compiled = None
    metropolis_loop_compiled = None
    inversion_counts_loop_compiled = None
    inversion_counts_compiled = None

if BACKEND == "numba":
    inversion_counts = inversion_counts_compiled
    metropolis_loop = metropolis_loop_compiled
    density = density_compiled
else:
    inversion_counts = inversion_counts_python
    metropolis_loop = metropolis_loop_python
    density = density_python
