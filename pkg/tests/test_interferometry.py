import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from anyonflow import interferometry, statfactor

SQRT2_OVER_6 = math.sqrt(2) / 6


class TestIdealProbabilities:
    def test_at_zero_of_three_particles(self):
        px, pmx, py = interferometry.ideal_probabilities(3, 2 * math.pi / 3)
        assert px == pytest.approx(0.5, abs=1e-13)
        assert pmx == pytest.approx(0.5, abs=1e-13)
        assert py == 0.5

    def test_at_zero_shift(self):
        assert interferometry.ideal_probabilities(5, 0.0) == (1.0, 0.0, 0.5)

    def test_three_particle_quarter_turn(self):
        px, pmx, py = interferometry.ideal_probabilities(3, math.pi / 2)
        assert px == pytest.approx((1 + SQRT2_OVER_6) / 2, abs=1e-14)
        assert pmx == pytest.approx(1 - (1 + SQRT2_OVER_6) / 2, abs=1e-14)
        assert py == 0.5

    @given(st.integers(1, 30), st.floats(-12.0, 12.0, allow_nan=False))
    def test_valid_distribution(self, n, delta):
        px, pmx, py = interferometry.ideal_probabilities(n, delta)
        assert 0.0 <= px <= 1.0
        assert pmx == 1.0 - px
        assert py == 0.5


class TestSimulateShots:
    def test_zero_shift_is_deterministic(self):
        rec = interferometry.simulate_shots(4, 0.0, 500, seed=1)
        assert rec.p_plus_x == 1.0
        assert rec.omega_estimate == 1.0
        assert rec.std_error == 0.0

    def test_full_turn_two_particles(self):
        # Omega_2(2 pi) = -1: the +x port never fires
        rec = interferometry.simulate_shots(2, 2 * math.pi, 500, seed=1)
        assert rec.p_plus_x == 0.0
        assert rec.omega_estimate == -1.0

    def test_fixed_seed_reproducible(self):
        a = interferometry.simulate_shots(3, 1.1, 4000, seed=42)
        b = interferometry.simulate_shots(3, 1.1, 4000, seed=42)
        assert a == b

    def test_estimator_identity(self):
        rec = interferometry.simulate_shots(3, 0.9, 3000, seed=7)
        assert rec.omega_estimate == 2.0 * rec.p_plus_x - 1.0
        assert rec.std_error == 2.0 * math.sqrt(
            rec.p_plus_x * (1.0 - rec.p_plus_x) / rec.shots)

    def test_zero_of_four_particles(self):
        # pi/2 is a zero of Omega_4: the estimate is noise around 0
        rec = interferometry.simulate_shots(4, math.pi / 2, 10_000, seed=3)
        assert abs(rec.omega_estimate) <= 4.0 * rec.std_error

    def test_shots_guard(self):
        with pytest.raises(ValueError):
            interferometry.simulate_shots(2, 0.1, 0, seed=1)


class TestFringeScan:
    def test_single_point_grid(self):
        records = interferometry.fringe_scan(5, [0.0], 100, seed=9)
        assert len(records) == 1
        assert records[0].omega_estimate == 1.0

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            interferometry.fringe_scan(5, [], 100, seed=9)

    def test_seed_derivation_contract(self):
        grid = [0.3, 0.9, 2.2]
        scan = interferometry.fringe_scan(3, grid, 2000, seed=100)
        for i, (d, rec) in enumerate(zip(grid, scan)):
            assert rec.seed == 100 + i
            assert rec == interferometry.simulate_shots(3, d, 2000, seed=100 + i)

    def test_two_particle_curve(self):
        grid = np.linspace(0.0, 2 * math.pi, 17)
        scan = interferometry.fringe_scan(2, grid, 20_000, seed=55)
        for d, rec in zip(grid, scan):
            ref = math.cos(d / 2)
            assert abs(rec.omega_estimate - ref) <= max(5.0 * rec.std_error, 1e-12)

    def test_y_channel_has_no_fringe(self):
        grid = np.linspace(0.0, 2 * math.pi, 9)
        for rec in interferometry.fringe_scan(3, grid, 20_000, seed=21):
            # binomial sigma at p = 1/2
            sigma = math.sqrt(0.25 / rec.shots)
            assert abs(rec.p_plus_y - 0.5) <= 4.0 * sigma

    def test_large_n_suppression(self):
        scan = interferometry.fringe_scan(800, [0.9, 2.0, math.pi, 4.8],
                                          20_000, seed=31)
        for rec in scan:
            assert abs(rec.omega_estimate) <= 4.0 * rec.std_error

    def test_estimator_unbiased(self):
        n, delta, shots = 3, 0.8, 2000
        ref = statfactor.omega_closed_form(n, delta)
        recs = [interferometry.simulate_shots(n, delta, shots, seed=s)
                for s in range(200)]
        mean = sum(r.omega_estimate for r in recs) / len(recs)
        typical_err = sum(r.std_error for r in recs) / len(recs)
        assert abs(mean - ref) <= 4.0 * typical_err / math.sqrt(len(recs))
