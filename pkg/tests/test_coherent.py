import math

import numpy as np
import pytest

from rotorphase import basis, coherent
from rotorphase.errors import ParameterDomainError, TruncationLeakError

from conftest import ALL_WIDTHS, WIDTH_DEFAULT, load_fixture


@pytest.fixture
def space():
    return basis.RotorSpace(16)


class TestVacuum:
    def test_center_amplitude(self, space):
        ref = load_fixture("coherent", "vacuum_c0").real
        vac = coherent.vacuum(space, WIDTH_DEFAULT)
        assert vac.amplitudes[space.index_of(0)].real == pytest.approx(ref, abs=1e-14)

    def test_neighbor_ratio(self, space):
        ref = load_fixture("coherent", "vacuum_c1_over_c0").real
        vac = coherent.vacuum(space, WIDTH_DEFAULT)
        ratio = vac.amplitudes[space.index_of(1)] / vac.amplitudes[space.index_of(0)]
        assert ratio.real == pytest.approx(ref, abs=1e-14)
        assert ratio.imag == 0.0

    @pytest.mark.parametrize("a", ALL_WIDTHS)
    def test_unit_norm(self, a):
        space = basis.RotorSpace(coherent.default_truncation(a) + 2)
        vac = coherent.vacuum(space, a)
        assert np.linalg.norm(vac.amplitudes) == pytest.approx(1.0, abs=1e-12)

    def test_fermion_vacuum(self):
        space = basis.RotorSpace(10, sector=basis.FERMION)
        vac = coherent.vacuum(space, WIDTH_DEFAULT)
        assert np.linalg.norm(vac.amplitudes) == pytest.approx(1.0, abs=1e-12)
        # half-integer labels make the profile symmetric about zero
        assert vac.amplitudes[0] == pytest.approx(vac.amplitudes[-1])

    def test_insufficient_truncation(self):
        with pytest.raises(TruncationLeakError):
            coherent.vacuum(basis.RotorSpace(3), WIDTH_DEFAULT)


class TestCoherentState:
    def test_zero_label_is_vacuum(self, space):
        state = coherent.coherent_state(space, coherent.CoherentLabel(0, 0.0, WIDTH_DEFAULT))
        vac = coherent.vacuum(space, WIDTH_DEFAULT)
        assert np.max(np.abs(state.amplitudes - vac.amplitudes)) < 1e-14

    def test_real_positive_at_zero_angle(self, space):
        state = coherent.coherent_state(space, coherent.CoherentLabel(3, 0.0, WIDTH_DEFAULT))
        assert np.max(np.abs(state.amplitudes.imag)) == 0.0
        assert np.all(state.amplitudes.real > 0.0)
        vac = coherent.vacuum(space, WIDTH_DEFAULT)
        assert state.amplitudes[space.index_of(3)] == pytest.approx(
            vac.amplitudes[space.index_of(0)], abs=1e-12
        )

    def test_angular_momentum_expectation(self, space):
        j_op = basis.angular_momentum_op(space).entries
        for m0, theta0 in ((2, 0.4), (-3, -2.7), (0, 1.0)):
            state = coherent.coherent_state(
                space, coherent.CoherentLabel(m0, theta0, WIDTH_DEFAULT)
            )
            mean = np.real(np.vdot(state.amplitudes, j_op @ state.amplitudes))
            assert mean == pytest.approx(m0, abs=1e-10)

    def test_displacement_route_agrees(self, space):
        from rotorphase.displacement import DisplacementLabel, displacement_matrix

        label = coherent.CoherentLabel(2, 1.3, WIDTH_DEFAULT)
        direct = coherent.coherent_state(space, label).amplitudes
        vac = coherent.vacuum(space, WIDTH_DEFAULT).amplitudes
        moved = displacement_matrix(
            space, DisplacementLabel(label.m0, label.theta0)
        ).entries @ vac
        assert np.max(np.abs(direct - moved)) < 1e-13

    def test_leak_guard(self, space):
        with pytest.raises(TruncationLeakError):
            coherent.coherent_state(space, coherent.CoherentLabel(15, 0.0, WIDTH_DEFAULT))


class TestOverlap:
    def test_normalization(self):
        lab = coherent.CoherentLabel(1, 0.7, WIDTH_DEFAULT)
        assert coherent.overlap_closed_form(WIDTH_DEFAULT, lab, lab) == pytest.approx(1.0)

    def test_unit_shift_value(self):
        ref = load_fixture("coherent", "overlap_00_10").real
        val = coherent.overlap_closed_form(
            WIDTH_DEFAULT,
            coherent.CoherentLabel(0, 0.0, WIDTH_DEFAULT),
            coherent.CoherentLabel(1, 0.0, WIDTH_DEFAULT),
        )
        assert val.real == pytest.approx(ref, abs=1e-13)
        assert abs(val.imag) < 1e-15

    @pytest.mark.parametrize("a", ALL_WIDTHS)
    def test_brute_force_oracle(self, a):
        rng = np.random.default_rng(42)
        space = basis.RotorSpace(coherent.default_truncation(a) + 8)
        for _ in range(25):
            l1 = coherent.CoherentLabel(
                int(rng.integers(-6, 7)), float(rng.uniform(-np.pi, np.pi)), a
            )
            l2 = coherent.CoherentLabel(
                int(rng.integers(-6, 7)), float(rng.uniform(-np.pi, np.pi)), a
            )
            v1 = coherent.coherent_state(space, l1).amplitudes
            v2 = coherent.coherent_state(space, l2).amplitudes
            brute = complex(np.vdot(v1, v2))
            closed = coherent.overlap_closed_form(a, l1, l2)
            scale = float(np.sum(np.abs(v1) * np.abs(v2)))
            assert abs(brute - closed) <= 1e-12 * max(scale, 1e-30)

    def test_width_mismatch_rejected(self):
        with pytest.raises(ParameterDomainError):
            coherent.overlap_closed_form(
                WIDTH_DEFAULT,
                coherent.CoherentLabel(0, 0.0, WIDTH_DEFAULT),
                coherent.CoherentLabel(0, 0.0, 2.0 * WIDTH_DEFAULT),
            )

    def test_modulus_depends_on_differences_only(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            m, mp_, dm = (int(rng.integers(-3, 4)) for _ in range(3))
            th = float(rng.uniform(-2, 2))
            thp = float(rng.uniform(-2, 2))
            shift = float(rng.uniform(-0.5, 0.5))
            base = coherent.overlap_closed_form(
                WIDTH_DEFAULT,
                coherent.CoherentLabel(mp_, thp, WIDTH_DEFAULT),
                coherent.CoherentLabel(m, th, WIDTH_DEFAULT),
            )
            moved = coherent.overlap_closed_form(
                WIDTH_DEFAULT,
                coherent.CoherentLabel(mp_ + dm, thp + shift, WIDTH_DEFAULT),
                coherent.CoherentLabel(m + dm, th + shift, WIDTH_DEFAULT),
            )
            assert abs(abs(base) - abs(moved)) < 1e-12


class TestOverlapKernel:
    def test_origin_is_one(self):
        assert coherent.overlap_kernel(WIDTH_DEFAULT, 0, 0.0) == pytest.approx(1.0)

    def test_lattice_zero(self):
        ref = load_fixture("coherent", "overlap_kernel_l1_alpha_pi")
        assert abs(ref) == 0.0
        assert abs(coherent.overlap_kernel(WIDTH_DEFAULT, 1, math.pi)) < 1e-12

    def test_row_zero_alternating_value(self):
        ref = load_fixture("coherent", "overlap_kernel_l0_alpha_pi").real
        val = coherent.overlap_kernel(WIDTH_DEFAULT, 0, math.pi)
        assert complex(val).real == pytest.approx(ref, abs=1e-13)

    def test_row_zero_real_positive(self):
        alphas = np.linspace(-math.pi, math.pi, 101)
        row = coherent.overlap_kernel(WIDTH_DEFAULT, 0, alphas)
        assert np.max(np.abs(row.imag)) < 1e-14
        assert np.all(row.real > 0.0)

    def test_reflection_symmetry(self):
        alphas = np.linspace(-3.0, 3.0, 25)
        for l in (1, 2, 5):
            lhs = coherent.overlap_kernel(WIDTH_DEFAULT, l, -alphas)
            rhs = coherent.overlap_kernel(WIDTH_DEFAULT, -l, alphas)
            assert np.max(np.abs(lhs - rhs)) < 1e-14

    def test_strictly_inside_unit_disk_off_origin(self):
        alphas = np.linspace(-math.pi, math.pi, 64, endpoint=False)
        for l in range(0, 5):
            row = np.abs(coherent.overlap_kernel(WIDTH_DEFAULT, l, alphas))
            if l == 0:
                inside = np.abs(alphas) > 1e-9
                assert np.all(row[inside] < 1.0)
                assert np.max(row) <= 1.0 + 1e-14
            else:
                assert np.all(row < 1.0)


class TestCompleteness:
    def test_reference_configuration(self):
        residual = coherent.completeness_residual(
            basis.RotorSpace(16), WIDTH_DEFAULT, m_window=24, n_theta=64
        )
        assert residual < 1e-10

    def test_undersampled_grid_aliases(self):
        # wide-in-m profile so the aliased coherences at |dm| = N are O(1)
        from conftest import WIDTH_NARROW_ANGLE

        residual = coherent.completeness_residual(
            basis.RotorSpace(8), WIDTH_NARROW_ANGLE, m_window=12, n_theta=8
        )
        assert residual > 1e-2

    def test_tight_window_edge_effect(self):
        space = basis.RotorSpace(12)
        edge = coherent.completeness_residual(
            space, WIDTH_DEFAULT, m_window=12, n_theta=48, margin=0
        )
        center = coherent.completeness_residual(
            space, WIDTH_DEFAULT, m_window=12, n_theta=48, margin=6
        )
        assert edge > 0.1
        assert center < 1e-10
