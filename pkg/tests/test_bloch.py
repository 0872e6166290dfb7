import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_ball_points
from magicforge.bloch import (MAGIC_BASIS, MAGIC_STATE, SQRT3,
                              BlochVector, PlaneCoords, bloch_to_density,
                              dephase, dephase_density, density_to_bloch,
                              fidelity_to_magic, from_plane, max_plane_radius,
                              to_plane)

coord = st.floats(-0.57, 0.57, allow_nan=False)


class TestBlochVector:
    def test_plain_construction(self):
        v = BlochVector(0.1, -0.2, 0.3)
        assert v.as_array().tolist() == [0.1, -0.2, 0.3]
        assert not v.clamped

    def test_clamps_tiny_overshoot(self):
        s = 1 / SQRT3
        v = BlochVector(s, s, s + 2e-10)
        assert v.clamped
        assert v.norm() <= 1.0

    def test_rejects_gross_overshoot(self):
        with pytest.raises(ValueError):
            BlochVector(0.9, 0.9, 0.2)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            BlochVector(math.nan, 0.0, 0.0)


class TestFidelity:
    def test_magic_state_is_unit_fidelity(self):
        assert fidelity_to_magic(MAGIC_STATE) == pytest.approx(1.0, abs=1e-15)

    def test_maximally_mixed(self):
        assert fidelity_to_magic((0.0, 0.0, 0.0)) == 0.5

    def test_on_axis_threshold_point(self):
        # a = 3/sqrt(7) on the axis has fidelity (1 + sqrt(3/7))/2
        t = 1.0 / math.sqrt(7.0)
        f = fidelity_to_magic((t, t, t))
        assert f == pytest.approx(0.5 * (1 + math.sqrt(3.0 / 7.0)), abs=1e-14)
        assert f == pytest.approx(0.8273, abs=5e-5)


class TestDephase:
    def test_axis_points_fixed(self):
        out = dephase(MAGIC_STATE)
        assert np.allclose(out.as_array(), MAGIC_STATE.as_array(), atol=1e-15)

    def test_x_axis(self):
        assert np.allclose(dephase((1.0, 0.0, 0.0)).as_array(), [1 / 3] * 3)

    def test_zero_sum_coordinates(self):
        s = 1 / math.sqrt(2)
        assert np.allclose(dephase((s, -s, 0.0)).as_array(), 0.0)

    @given(coord, coord, coord)
    def test_idempotent(self, x, y, z):
        once = dephase((x, y, z))
        twice = dephase(once)
        assert once.as_array().tolist() == twice.as_array().tolist()

    @given(coord, coord, coord)
    def test_preserves_fidelity(self, x, y, z):
        assert fidelity_to_magic(dephase((x, y, z))) == pytest.approx(
            fidelity_to_magic((x, y, z)), abs=1e-14)


class TestPlaneCoords:
    def test_magic_state_coordinates(self):
        p = to_plane(MAGIC_STATE)
        assert p.a == pytest.approx(SQRT3, abs=1e-14)
        assert p.r == pytest.approx(0.0, abs=1e-14)
        assert p.theta == 0.0

    def test_modified_x_axis_direction(self):
        v = from_plane(PlaneCoords(a=0.0, r=0.3, theta=0.0))
        assert v.x + v.y + v.z == pytest.approx(0.0, abs=1e-14)
        # direction (1, 1, -2)/sqrt(6)
        assert np.allclose(v.as_array(), 0.3 * np.array([1, 1, -2]) / math.sqrt(6))

    def test_round_trip_identity(self):
        rng = np.random.default_rng(404)
        for arr in random_ball_points(rng, 1000):
            p = to_plane(BlochVector.from_array(arr))
            back = from_plane(p)
            assert np.abs(back.as_array() - arr).max() < 1e-12

    def test_theta_zero_convention_at_r_zero(self):
        assert to_plane((0.2, 0.2, 0.2)).theta == 0.0

    def test_fidelity_depends_only_on_a(self):
        rng = np.random.default_rng(11)
        a = 0.9
        f_ref = PlaneCoords(a=a, r=0.0, theta=0.0).fidelity
        for _ in range(50):
            r = rng.uniform(0, max_plane_radius(0.5 * (1 + a / SQRT3)))
            p = PlaneCoords(a=a, r=r, theta=rng.uniform(0, 2 * math.pi))
            assert fidelity_to_magic(from_plane(p)) == pytest.approx(f_ref, abs=1e-12)

    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            PlaneCoords(a=0.0, r=-0.1, theta=0.0)

    def test_theta_normalized(self):
        assert PlaneCoords(a=0.0, r=0.1, theta=5 * math.pi).theta == pytest.approx(math.pi)

    def test_out_of_ball_plane_point_rejected(self):
        with pytest.raises(ValueError):
            from_plane(PlaneCoords(a=SQRT3 * (2 * 0.9 - 1), r=2.0, theta=0.0))


class TestMagicBasis:
    def test_orthogonality(self):
        overlap = MAGIC_BASIS.t0_ket.conj() @ MAGIC_BASIS.t1_ket
        assert abs(overlap) < 1e-12

    def test_unit_trace_and_purity(self):
        for dm in (MAGIC_BASIS.t0, MAGIC_BASIS.t1):
            assert np.trace(dm).real == pytest.approx(1.0, abs=1e-14)
            assert np.trace(dm @ dm).real == pytest.approx(1.0, abs=1e-14)

    def test_bloch_vectors(self):
        assert np.allclose(MAGIC_BASIS.t0_bloch, np.ones(3) / SQRT3)
        assert np.allclose(MAGIC_BASIS.t1_bloch, -np.ones(3) / SQRT3)
        assert np.allclose(density_to_bloch(MAGIC_BASIS.t0).as_array(),
                           MAGIC_BASIS.t0_bloch, atol=1e-14)

    def test_kets_match_density_matrices(self):
        assert np.allclose(np.outer(MAGIC_BASIS.t0_ket, MAGIC_BASIS.t0_ket.conj()),
                           MAGIC_BASIS.t0, atol=1e-14)


class TestDephaseDensity:
    def test_magic_state_invariant(self):
        out = dephase_density(MAGIC_BASIS.t0)
        assert np.abs(out - MAGIC_BASIS.t0).max() < 1e-14

    def test_maximally_mixed_invariant(self):
        assert np.abs(dephase_density(np.eye(2) / 2) - np.eye(2) / 2).max() < 1e-15

    def test_ground_state_matches_bloch_level(self):
        out = dephase_density(bloch_to_density((0.0, 0.0, 1.0)))
        expected = bloch_to_density(dephase((0.0, 0.0, 1.0)))
        assert np.abs(out - expected).max() < 1e-14

    def test_agrees_with_bloch_dephase_on_random_states(self):
        rng = np.random.default_rng(17)
        for arr in random_ball_points(rng, 100):
            out = dephase_density(bloch_to_density(arr))
            expected = bloch_to_density(dephase(arr))
            assert np.abs(out - expected).max() < 1e-12
            assert np.abs(out - out.conj().T).max() < 1e-14
            assert np.trace(out).real == pytest.approx(1.0, abs=1e-14)
