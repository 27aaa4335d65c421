import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from anyonflow import sectors, statfactor

SQRT2_OVER_6 = math.sqrt(2) / 6

finite_shifts = st.floats(min_value=-12 * math.pi, max_value=12 * math.pi,
                          allow_nan=False, allow_infinity=False)


class TestClosedForm:
    @pytest.mark.parametrize("n", [1, 2, 3, 7, 40])
    def test_unit_at_zero(self, n):
        assert statfactor.omega_closed_form(n, 0.0) == 1.0

    def test_three_particle_quarter_turn(self):
        assert statfactor.omega_closed_form(3, math.pi / 2) == pytest.approx(
            SQRT2_OVER_6, abs=1e-14)

    def test_zero_of_three_particles(self):
        assert abs(statfactor.omega_closed_form(3, 2 * math.pi / 3)) <= 1e-12

    def test_three_particles_full_turn(self):
        assert statfactor.omega_closed_form(3, 2 * math.pi) == -1.0

    def test_single_particle_flat(self):
        assert statfactor.omega_closed_form(1, 1.234) == 1.0

    def test_two_particles_cosine(self):
        for delta in np.linspace(-7.0, 7.0, 41):
            assert statfactor.omega_closed_form(2, delta) == pytest.approx(
                math.cos(delta / 2), abs=1e-15)

    @pytest.mark.parametrize("n", range(1, 61))
    def test_full_turn_sign_exact(self, n):
        assert statfactor.omega_closed_form(n, 2 * math.pi) == (-1.0) ** (
            n * (n - 1) // 2)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            statfactor.omega_closed_form(3, math.inf)

    def test_grid_matches_scalar(self):
        grid = np.linspace(0, 4 * math.pi, 101)
        vec = statfactor.omega_closed_form_grid(6, grid)
        for d, v in zip(grid, vec):
            assert v == statfactor.omega_closed_form(6, d)

    @given(st.integers(1, 8), finite_shifts)
    def test_matches_bruteforce(self, n, delta):
        assert statfactor.omega_closed_form(n, delta) == pytest.approx(
            sectors.omega_bruteforce(n, delta), abs=1e-12)

    @given(st.integers(1, 40), finite_shifts)
    def test_even(self, n, delta):
        assert statfactor.omega_closed_form(n, -delta) == pytest.approx(
            statfactor.omega_closed_form(n, delta), abs=1e-12)

    @given(st.integers(1, 40), finite_shifts)
    def test_four_pi_periodic(self, n, delta):
        assert statfactor.omega_closed_form(n, delta + 4 * math.pi) == pytest.approx(
            statfactor.omega_closed_form(n, delta), abs=1e-12)

    @given(st.integers(1, 60), finite_shifts)
    def test_bounded_by_one(self, n, delta):
        assert abs(statfactor.omega_closed_form(n, delta)) <= 1.0

    def test_sign_changes_only_at_zeros(self):
        for n in range(2, 9):
            bounds = [0.0] + statfactor.zero_set(n) + [2 * math.pi]
            for lo, hi in zip(bounds, bounds[1:]):
                inner = np.linspace(lo, hi, 30)[1:-1]
                vals = statfactor.omega_closed_form_grid(n, inner)
                signs = {np.sign(v) for v in vals if abs(v) > 1e-12}
                assert len(signs) == 1


class TestRecursion:
    def test_two_particles_cosine(self):
        for delta in (0.0, 0.5, 2.0, 3.9, 6.2):
            assert statfactor.omega_recursion(2, delta) == pytest.approx(
                math.cos(delta / 2), abs=1e-15)

    def test_single_particle(self):
        assert statfactor.omega_recursion(1, 1.234) == 1.0

    def test_four_particles_at_pi(self):
        assert abs(statfactor.omega_recursion(4, math.pi)) <= 1e-12

    @given(st.integers(1, 8), finite_shifts)
    def test_agrees_with_closed_form(self, n, delta):
        assert statfactor.omega_recursion(n, delta) == pytest.approx(
            statfactor.omega_closed_form(n, delta), abs=1e-12)


class TestDegeneracySum:
    def test_three_particles(self):
        row = sectors.DegeneracyRow(3, (1, 2, 2, 1))
        assert statfactor.omega_degeneracy_sum(3, math.pi / 2, row) == pytest.approx(
            SQRT2_OVER_6, abs=1e-14)

    def test_two_particles_zero(self):
        row = sectors.DegeneracyRow(2, (1, 1))
        assert abs(statfactor.omega_degeneracy_sum(2, math.pi, row)) <= 1e-12

    def test_single_particle(self):
        row = sectors.DegeneracyRow(1, (1,))
        assert statfactor.omega_degeneracy_sum(1, 0.7, row) == 1.0

    def test_row_mismatch_is_error(self):
        row = sectors.DegeneracyRow(3, (1, 2, 2, 1))
        with pytest.raises(ValueError):
            statfactor.omega_degeneracy_sum(4, 0.3, row)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_agrees_with_closed_form(self, n):
        row = sectors.degeneracy_recursive(n)
        for delta in np.linspace(0, 4 * math.pi, 37):
            assert statfactor.omega_degeneracy_sum(n, delta, row) == pytest.approx(
                statfactor.omega_closed_form(n, delta), abs=1e-12)


class TestZeros:
    def test_two_particles(self):
        assert statfactor.zero_set(2) == [math.pi]

    def test_three_particles(self):
        assert statfactor.zero_set(3) == pytest.approx(
            [2 * math.pi / 3, math.pi, 4 * math.pi / 3])

    def test_four_particles(self):
        expected = [math.pi / 2, 2 * math.pi / 3, math.pi,
                    4 * math.pi / 3, 3 * math.pi / 2]
        assert statfactor.zero_set(4) == pytest.approx(expected)

    def test_single_particle_has_none(self):
        assert statfactor.zero_set(1) == []

    @pytest.mark.parametrize("n", range(2, 11))
    def test_all_are_roots(self, n):
        for z in statfactor.zero_set(n):
            assert abs(statfactor.omega_closed_form(n, z)) <= 1e-12

    @pytest.mark.parametrize("n", range(2, 11))
    def test_open_interval_and_minimum(self, n):
        zeros = statfactor.zero_set(n)
        assert all(0.0 < z < 2 * math.pi for z in zeros)
        assert zeros == sorted(set(zeros))
        assert zeros[0] == statfactor.first_zero(n)

    def test_first_zero_values(self):
        assert statfactor.first_zero(2) == math.pi
        assert statfactor.first_zero(4) == math.pi / 2
        assert statfactor.first_zero(100) == 2 * math.pi / 100

    def test_first_zero_single_particle_error(self):
        with pytest.raises(ValueError):
            statfactor.first_zero(1)

    def test_count_matches_distinct_fractions(self):
        # Euler-totient accounting for the deduplicated set
        def totient(m):
            return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)

        for n in range(2, 15):
            assert len(statfactor.zero_set(n)) == sum(
                totient(m) - (1 if m == 1 else 0) for m in range(2, n + 1))


class TestGaussian:
    def test_unit_at_zero(self):
        assert statfactor.gaussian_approx(17, 0.0) == 1.0

    def test_two_particles(self):
        assert statfactor.gaussian_approx(2, 1.0) == math.exp(-0.125)

    def test_ten_particles(self):
        # variance is exactly 125/4; exponent -0.5 * 0.05^2 * 31.25
        assert statfactor.gaussian_approx(10, 0.05) == pytest.approx(
            math.exp(-0.0390625), rel=1e-15)

    @given(st.integers(2, 50), finite_shifts)
    def test_dominates_into_bound(self, n, delta):
        # large arguments underflow to an exact 0.0, which is fine
        val = statfactor.gaussian_approx(n, delta)
        assert 0.0 <= val <= 1.0


class TestTrustInterval:
    def test_frozen_values(self):
        assert statfactor.gaussian_trust_interval(2, 0.1).half_width == \
            pytest.approx(1.1562057909110453, rel=1e-12)
        assert statfactor.gaussian_trust_interval(10, 0.1).half_width == \
            pytest.approx(0.15464028264587154, rel=1e-12)

    def test_threshold_domain(self):
        with pytest.raises(ValueError):
            statfactor.gaussian_trust_interval(4, 0.0)
        with pytest.raises(ValueError):
            statfactor.gaussian_trust_interval(4, -0.2)

    def test_single_particle_rejected(self):
        with pytest.raises(ValueError):
            statfactor.gaussian_trust_interval(1, 0.1)

    def test_monotone_in_threshold(self):
        widths = [statfactor.gaussian_trust_interval(6, t).half_width
                  for t in (0.01, 0.1, 0.5, 2.0)]
        assert widths == sorted(widths)
        assert len(set(widths)) == len(widths)

    def test_shrinks_with_particle_number(self):
        widths = [statfactor.gaussian_trust_interval(n, 0.1).half_width
                  for n in (2, 5, 20, 100)]
        assert widths == sorted(widths, reverse=True)

    def test_five_fourths_power_scaling(self):
        ratios = {round(statfactor.gaussian_trust_interval(n, 0.3).half_width
                        * n ** 1.25, 12) for n in (4, 16, 64, 256)}
        assert len(ratios) == 1

    def test_membership(self):
        trust = statfactor.gaussian_trust_interval(10, 0.1)
        assert 0.0 in trust
        assert trust.half_width in trust
        assert -(trust.half_width) in trust
        assert (trust.half_width * 1.01) not in trust


class TestAsymptoticIndicator:
    def test_multiples_of_two_pi(self):
        assert statfactor.asymptotic_indicator(0.0)
        assert statfactor.asymptotic_indicator(4 * math.pi)
        assert statfactor.asymptotic_indicator(-6 * math.pi)

    def test_interior_vanishes(self):
        assert not statfactor.asymptotic_indicator(math.pi)
        assert not statfactor.asymptotic_indicator(0.1)

    def test_tolerance_window(self):
        assert statfactor.asymptotic_indicator(2 * math.pi - 1e-12)
        assert statfactor.asymptotic_indicator(1e-10)
        assert not statfactor.asymptotic_indicator(1e-8)

    @given(st.integers(-5, 5), st.floats(min_value=1e-6, max_value=math.pi,
                                         allow_nan=False))
    def test_interior_of_every_period(self, k, eps):
        assert not statfactor.asymptotic_indicator(2 * math.pi * k + eps)


class TestCanonicalShift:
    def test_range(self):
        for delta in (-25.0, -0.1, 0.0, 3.0, 12.6, 200.0):
            out = statfactor.canonical_shift(delta)
            assert 0.0 <= out < 4 * math.pi

    def test_identity_inside_domain(self):
        assert statfactor.canonical_shift(1.5) == 1.5

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            statfactor.canonical_shift(math.nan)

    @given(st.integers(1, 12), finite_shifts)
    def test_preserves_overlap_factor(self, n, delta):
        assert statfactor.omega_closed_form(n, statfactor.canonical_shift(delta)) \
            == pytest.approx(statfactor.omega_closed_form(n, delta), abs=1e-11)
