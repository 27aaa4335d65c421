"""The compiled and interpreted kernel flavors must agree bit for bit."""
import itertools
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from anyonflow import _backend, _kernels

needs_numba = pytest.mark.skipif(_kernels.metropolis_loop_compiled is None,
                                 reason="numba not importable")


def reference_inversion_counts(n):
    out = []
    for perm in itertools.permutations(range(n)):
        out.append(sum(1 for i in range(n) for j in range(i + 1, n)
                       if perm[i] > perm[j]))
    return np.array(out, dtype=np.int64)


class TestInversionCounts:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_python_flavor_matches_reference(self, n):
        assert np.array_equal(_kernels.inversion_counts_python(n),
                              reference_inversion_counts(n))

    @needs_numba
    @pytest.mark.parametrize("n", range(1, 9))
    def test_compiled_flavor_matches_reference(self, n):
        out = np.empty(math.factorial(n), dtype=np.int64)
        _kernels.inversion_counts_loop_compiled(n, out)
        assert np.array_equal(out, reference_inversion_counts(n))

    @pytest.mark.parametrize("n", range(1, 8))
    def test_loop_source_matches_vectorized(self, n):
        out = np.empty(math.factorial(n), dtype=np.int64)
        _kernels.inversion_counts_loop_python(n, out)
        assert np.array_equal(out, _kernels.inversion_counts_python(n))


def walk_inputs(kind, n, scale, steps, seed):
    rng = np.random.default_rng(seed)
    if kind == _kernels.KIND_BOX:
        x0 = rng.uniform(0.0, scale, n)
    else:
        x0 = rng.standard_normal(n) * scale
    occ = np.arange(1, n + 1, dtype=np.int64)
    normals = rng.standard_normal((steps, n))
    uniforms = rng.random(steps)
    return occ, x0, normals, uniforms


class TestMetropolisFlavors:
    @needs_numba
    @pytest.mark.parametrize("kind,scale", [(_kernels.KIND_BOX, 1.0),
                                            (_kernels.KIND_HARMONIC, 0.8)])
    @pytest.mark.parametrize("n", [2, 3])
    def test_bitwise_identical_walks(self, kind, scale, n):
        n_samples, burn, thin = 300, 1000, 5
        steps = burn + n_samples * thin
        occ, x0, normals, uniforms = walk_inputs(kind, n, scale, steps, seed=123)
        out_py = np.empty((n_samples, n))
        out_nb = np.empty((n_samples, n))
        acc_py, step_py = _kernels.metropolis_loop_python(
            kind, occ, scale, 1e-12, x0.copy(), 0.5 * scale, normals, uniforms,
            burn, thin, 200, out_py)
        acc_nb, step_nb = _kernels.metropolis_loop_compiled(
            kind, occ, scale, 1e-12, x0.copy(), 0.5 * scale, normals, uniforms,
            burn, thin, 200, out_nb)
        assert acc_py == acc_nb
        assert step_py == step_nb
        assert np.array_equal(out_py, out_nb)

    @needs_numba
    def test_density_flavors_agree(self):
        rng = np.random.default_rng(0)
        occ = np.array([1, 2, 3], dtype=np.int64)
        scratch = np.empty((3, 3))
        for kind, scale in ((_kernels.KIND_BOX, 1.0), (_kernels.KIND_HARMONIC, 1.3)):
            for _ in range(50):
                x = rng.uniform(0.05, 0.95, 3) if kind == _kernels.KIND_BOX \
                    else rng.standard_normal(3)
                a = _kernels.density_python(kind, occ, scale, 1e-12, x, scratch)
                b = _kernels.density_compiled(kind, occ, scale, 1e-12, x, scratch)
                assert a == b

    def test_density_outside_box_support(self):
        occ = np.array([1, 2], dtype=np.int64)
        scratch = np.empty((2, 2))
        x = np.array([-0.2, 0.5])
        assert _kernels.density_python(_kernels.KIND_BOX, occ, 1.0, 1e-12,
                                       x, scratch) == 0.0

    def test_density_zero_at_contact(self):
        occ = np.array([1, 2], dtype=np.int64)
        scratch = np.empty((2, 2))
        x = np.array([0.4, 0.4 + 1e-13])
        assert _kernels.density_python(_kernels.KIND_BOX, occ, 1.0, 1e-12,
                                       x, scratch) == 0.0


class TestDeterminant:
    def test_matches_numpy(self):
        rng = np.random.default_rng(5)
        for n in (1, 2, 3, 5, 8):
            a = rng.standard_normal((n, n))
            assert _kernels._det_destructive(a.copy()) == pytest.approx(
                np.linalg.det(a), rel=1e-10)

    def test_singular_matrix(self):
        a = np.array([[1.0, 2.0], [2.0, 4.0]])
        assert _kernels._det_destructive(a) == 0.0

    def test_repeated_rows_exactly_zero(self):
        a = np.array([[0.3, 0.7], [0.3, 0.7]])
        assert _kernels._det_destructive(a) == 0.0


class TestBackendSelection:
    def test_resolve_explicit(self):
        assert _backend.resolve_backend("numpy") == "numpy"

    def test_resolve_default_prefers_numba(self):
        expected = "numba" if _backend._numba_available() else "numpy"
        assert _backend.resolve_backend("") == expected

    def test_env_var_selects_numpy(self):
        env = dict(os.environ, ANYONFLOW_BACKEND="numpy")
        out = subprocess.run(
            [sys.executable, "-c",
             "import anyonflow; print(anyonflow.BACKEND)"],
            env=env, capture_output=True, text=True, check=True)
        assert out.stdout.strip() == "numpy"

    def test_unknown_env_value_warns_and_falls_back(self):
        with pytest.warns(UserWarning):
            name = _backend.resolve_backend("jax")
        assert name in ("numba", "numpy")

    @needs_numba
    def test_mc_estimates_identical_across_backends(self):
        script = (
            "import math, anyonflow\n"
            "b = anyonflow.OrbitalBasis('box', 1.0, 2)\n"
            "e = anyonflow.mc_overlap(b, 2, math.pi/3, 2000, seed=99)\n"
            "print(repr(e.mean), repr(e.std_error), e.acceptance_rate)\n"
        )
        outputs = []
        for backend in ("numba", "numpy"):
            env = dict(os.environ, ANYONFLOW_BACKEND=backend)
            res = subprocess.run([sys.executable, "-c", script], env=env,
                                 capture_output=True, text=True, check=True)
            outputs.append(res.stdout)
        assert outputs[0] == outputs[1]
