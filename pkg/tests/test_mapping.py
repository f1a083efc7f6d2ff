import math
import warnings

import numpy as np
import pytest

from rotorphase import basis, coherent, mapping
from rotorphase.errors import (
    AliasingError,
    ConvergenceError,
    ParameterDomainError,
    SingularKernelWarning,
)

from conftest import WIDTH_DEFAULT, load_fixture

A = WIDTH_DEFAULT


@pytest.fixture(scope="module")
def space():
    return basis.RotorSpace(12)


@pytest.fixture(scope="module")
def table(space):
    return mapping.build_kernel_table(A, 2 * space.M, 128)


class TestSParameter:
    def test_unit_disk(self):
        mapping.SParameter(0.3 + 0.4j)
        with pytest.raises(ParameterDomainError):
            mapping.SParameter(1.2)


class TestKernelTable:
    def test_values_match_pointwise_kernel(self, table):
        for l in (-5, 0, 3):
            row = coherent.overlap_kernel(A, l, table.alpha)
            assert np.max(np.abs(table.row(l) - row)) < 1e-14

    def test_log_exponentiates_back(self, table):
        finite = ~table.zero_mask
        rebuilt = np.exp(table.log_values[finite])
        assert np.max(np.abs(rebuilt - table.values[finite])) < 1e-12

    def test_unwrapped_phase_is_continuous(self, table):
        for i in range(table.values.shape[0]):
            row = table.log_values[i].imag
            finite = np.isfinite(row)
            jumps = np.abs(np.diff(row[finite]))
            if jumps.size:
                assert np.max(jumps) < 0.5

    def test_kernel_rows_real(self, table):
        assert float(np.max(np.abs(table.values.imag))) < 1e-13

    def test_zero_power_is_identity(self, table):
        assert np.array_equal(
            table.powers(0.0), np.ones_like(table.values, dtype=complex)
        )

    def test_negative_power_on_lattice_zero_warns(self):
        std = mapping.build_kernel_table(A, 3, 16, half_offset=False)
        assert np.any(std.zero_mask)
        with pytest.warns(SingularKernelWarning):
            powers = std.powers(-1.0)
        assert np.all(np.isinf(np.abs(powers[std.zero_mask])))


class TestCharacteristicFunction:
    def test_ground_projector(self, space):
        rho = basis.pure_density(basis.basis_state(space, 0))
        assert mapping.characteristic_function(rho, 0, 0.77) == pytest.approx(1.0)
        assert mapping.characteristic_function(rho, 2, 0.77) == 0.0

    def test_trace_at_origin(self, space):
        rho = basis.diagonal_density(space, np.exp(-space.labels**2))
        assert mapping.characteristic_function(rho, 0, 0.0) == pytest.approx(1.0)

    def test_vacuum_reproduces_overlap_kernel(self, space):
        rho = basis.pure_density(coherent.vacuum(space, A))
        alphas = np.linspace(-2.5, 2.5, 11)
        for l in (0, 1, -3):
            chi = mapping.characteristic_function(rho, l, alphas)
            expected = np.exp(0.5j * l * alphas) * coherent.overlap_kernel(A, l, alphas)
            assert np.max(np.abs(chi - expected)) < 1e-13


class TestKernelMatrix:
    def test_wigner_kernel_diagonal_delta(self, space, table):
        for m in (0, 1, -2):
            T = mapping.kernel_matrix(space, A, 0.0, m, 0.9, table).entries
            i0 = space.index_of(0)
            assert abs(T[i0, i0] - (1.0 if m == 0 else 0.0)) < 1e-14

    def test_central_identity(self, space, table):
        label = coherent.CoherentLabel(-2, 1.7, A)
        state = coherent.coherent_state(space, label)
        projector = np.outer(state.amplitudes, state.amplitudes.conj())
        T = mapping.kernel_matrix(space, A, -1.0, label.m0, label.theta0, table)
        assert np.max(np.abs(T.entries - projector)) < 1e-10

    @pytest.mark.parametrize("s", [0.0, 1.0, -1.0, 0.5, -0.5, 0.3 + 0.4j])
    def test_unit_trace(self, s):
        space = basis.RotorSpace(32)
        table = mapping.build_kernel_table(A, 2 * space.M, 256)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            T = mapping.kernel_matrix(space, A, s, 1, -0.4, table)
        assert abs(np.sum(np.diag(T.entries)) - 1.0) < 1e-10

    def test_hermitian_for_real_s(self, space, table):
        T = mapping.kernel_matrix(space, A, -0.5, 2, 0.3, table).entries
        assert np.max(np.abs(T - T.conj().T)) < 1e-12


class TestPairTrace:
    def test_opposite_orders_give_dirichlet(self, table):
        for dtheta in (0.0, 0.31, -2.2):
            value = mapping.pair_trace(A, -0.5, 0.5, 0, dtheta, table)
            closed = complex(np.sum(np.exp(1j * table.l_values * dtheta)))
            assert abs(value - closed) < 1e-10

    def test_momentum_orthogonality(self, table):
        for dm in (1, 2, 7):
            assert abs(mapping.pair_trace(A, -0.3, 0.3, dm, 0.4, table)) < 1e-12

    def test_trivial_power_matches(self, table):
        lhs = mapping.pair_trace(A, 0.0, 0.0, 0, 0.5, table)
        rhs = mapping.pair_trace(A, -1.0, 1.0, 0, 0.5, table)
        assert abs(lhs - rhs) < 1e-10

    def test_matrix_product_oracle_unit_power(self, space, table):
        # Tr[T(-1)(m',th') T(0)(m,th)] = <m',th'| T(0)(m,th) |m',th'>
        for dm, dtheta in ((0, 0.0), (1, 0.0), (0, 0.9), (2, -0.6)):
            formula = mapping.pair_trace(A, -1.0, 0.0, dm, dtheta, table)
            state = coherent.coherent_state(space, coherent.CoherentLabel(dm, dtheta, A))
            T0 = mapping.kernel_matrix(space, A, 0.0, 0, 0.0, table)
            oracle = complex(np.vdot(state.amplitudes, T0.entries @ state.amplitudes))
            assert abs(formula - oracle) < 1e-9

    def test_lattice_fixture_values(self):
        table = mapping.build_kernel_table(A, 16, 32)
        for name, dm in (
            ("zeta1_lattice_dm0_dtheta0", 0),
            ("zeta1_lattice_dm1_dtheta0", 1),
        ):
            ref = load_fixture("mapping", name)
            value = mapping.pair_trace(A, -1.0, 0.0, dm, 0.0, table)
            assert abs(value - ref) < 1e-13

    def test_divergent_order_sum_raises(self, table):
        with pytest.raises(ConvergenceError):
            mapping.pair_trace(A, 0.5, 0.6, 0, 0.0, table)


class TestPhaseSpaceMaps:
    def test_identity_maps_to_one(self, space, table):
        grid = mapping.full_period_grid(128)
        ident = basis.OperatorMatrix(space, np.eye(space.dim, dtype=complex))
        dist = mapping.map_operator(ident, 0.0, grid, table)
        # the truncated identity maps to the indicator of its own window
        keep = np.abs(grid.m_values) <= space.M
        assert np.max(np.abs(dist.values[keep] - 1.0)) < 1e-10
        assert np.max(np.abs(dist.values[~keep])) < 1e-10

    def test_angular_momentum_weyl_symbol(self, space, table):
        grid = mapping.full_period_grid(128)
        j_op = basis.angular_momentum_op(space)
        dist = mapping.map_operator(j_op, 0.0, grid, table)
        keep = np.abs(grid.m_values) <= space.M
        expected = np.broadcast_to(
            grid.m_values[keep, None].astype(float), dist.values[keep].shape
        )
        assert np.max(np.abs(dist.values[keep] - expected)) < 1e-10

    def test_projector_map_gives_overlap_square(self, space, table):
        grid = mapping.full_period_grid(128)
        vac = coherent.vacuum(space, A)
        proj = basis.OperatorMatrix(
            space, np.outer(vac.amplitudes, vac.amplitudes.conj())
        )
        dist = mapping.map_operator(proj, 1.0, grid, table)  # image kernel s = -1
        keep = np.abs(grid.m_values) <= space.M // 2
        for idx in np.nonzero(keep)[0]:
            row = coherent.overlap_kernel(A, int(grid.m_values[idx]), grid.theta) ** 2
            assert np.max(np.abs(dist.values[idx] - row)) < 1e-10

    def test_round_trip_random_hermitian(self, space, table):
        grid = mapping.full_period_grid(128)
        rng = np.random.default_rng(77)
        raw = rng.normal(size=(space.dim, space.dim)) + 1j * rng.normal(
            size=(space.dim, space.dim)
        )
        herm = basis.OperatorMatrix(space, 0.5 * (raw + raw.conj().T))
        dist = mapping.map_operator(herm, 0.0, grid, table)
        rebuilt = mapping.reconstruct_operator(dist, table, space)
        assert np.max(np.abs(rebuilt.entries - herm.entries)) < 1e-8

    def test_round_trip_projector_kernels(self, space, table):
        grid = mapping.full_period_grid(128)
        rho = basis.pure_density(
            coherent.coherent_state(space, coherent.CoherentLabel(1, 0.5, A))
        )
        dist = mapping.map_operator(
            basis.OperatorMatrix(space, rho.entries), -1.0, grid, table
        )
        rebuilt = mapping.reconstruct_operator(dist, table, space)
        assert np.max(np.abs(rebuilt.entries - rho.entries)) < 1e-8

    def test_constant_distribution_rebuilds_identity(self, space, table):
        grid = mapping.full_period_grid(128)
        ones = mapping.Distribution(
            s=0.0,
            a=A,
            space_M=space.M,
            grid=grid,
            values=np.ones((grid.n_m, grid.n_theta), dtype=complex),
        )
        rebuilt = mapping.reconstruct_operator(ones, table, space)
        assert np.max(np.abs(rebuilt.entries - np.eye(space.dim))) < 1e-10

    def test_reconstruction_needs_full_period(self, space, table):
        grid = mapping.windowed_grid(-4, 4, 128)
        rho = basis.pure_density(coherent.vacuum(space, A))
        dist = mapping.expectation_table(rho, 0.0, grid, table)
        with pytest.raises(AliasingError):
            mapping.reconstruct_operator(dist, table, space)

    def test_expectation_pairing(self, space, table):
        grid = mapping.full_period_grid(128)
        label = coherent.CoherentLabel(2, -0.8, A)
        rho = basis.pure_density(coherent.coherent_state(space, label))
        ident = basis.OperatorMatrix(space, np.eye(space.dim, dtype=complex))
        assert mapping.expectation_via_phase_space(
            ident, rho, 0.0, grid, table
        ) == pytest.approx(1.0, abs=1e-10)
        j_op = basis.angular_momentum_op(space)
        assert mapping.expectation_via_phase_space(
            j_op, rho, 0.0, grid, table
        ) == pytest.approx(label.m0, abs=1e-8)
        cos_op, _ = basis.trig_theta_ops(space)
        vac = basis.pure_density(coherent.vacuum(space, A))
        oracle = complex(np.trace(cos_op.entries @ vac.entries))
        assert mapping.expectation_via_phase_space(
            cos_op, vac, 0.0, grid, table
        ) == pytest.approx(oracle, abs=1e-8)


class TestDistributionIO:
    def test_csv_round_trip(self, space, table, tmp_path):
        grid = mapping.full_period_grid(64)
        small_table = mapping.build_kernel_table(A, 24, 64)
        rho = basis.pure_density(
            coherent.coherent_state(space, coherent.CoherentLabel(1, 0.4, A))
        )
        dist = mapping.expectation_table(rho, 0.0, grid, small_table)
        path = tmp_path / "dist.csv"
        mapping.save_distribution(dist, str(path))
        loaded = mapping.load_distribution(str(path))
        assert loaded.s == dist.s
        assert loaded.a == pytest.approx(dist.a)
        assert loaded.space_M == dist.space_M
        assert np.array_equal(loaded.grid.m_values, dist.grid.m_values)
        assert np.max(np.abs(loaded.values - dist.values)) == 0.0

    def test_header_format(self, space, tmp_path):
        grid = mapping.full_period_grid(64)
        small_table = mapping.build_kernel_table(A, 24, 64)
        rho = basis.pure_density(coherent.vacuum(space, A))
        dist = mapping.expectation_table(rho, 0.0, grid, small_table)
        path = tmp_path / "dist.csv"
        mapping.save_distribution(dist, str(path))
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# s_re=0 s_im=0 a=0.15915494309189535 M=12 N=64")
        assert lines[1] == "m,theta,re,im"
