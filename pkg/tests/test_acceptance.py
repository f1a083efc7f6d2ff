"""Acceptance criteria, one test per criterion at its stated tolerance.

Run with ``pytest -v -s tests/test_acceptance.py`` to see one line per
criterion with the measured residuals.
"""

import math
import time
import warnings

import numpy as np
import pytest

from rotorphase import basis, coherent, mapping, quasiprob, uncertainty
from rotorphase.errors import SingularKernelWarning

from conftest import ALL_WIDTHS, WIDTH_DEFAULT, load_fixture

A = WIDTH_DEFAULT


def _report(name, detail):
    print(f"[PASS] {name}: {detail}")


def test_fig1_reproduction():
    """Slack scans at the three published widths: range, extrema, 4% anchor."""
    start = time.perf_counter()
    step = 2.0 * math.pi / 256
    anchor = None
    for a in ALL_WIDTHS:
        rows = uncertainty.scan_delta_U(a, 256)
        thetas, values = rows[:, 0], rows[:, 1]
        assert np.all(values >= -1e-12) and np.all(values <= 1.0 + 1e-12)
        argmax_theta = float(thetas[int(np.argmax(values))])
        assert (
            min(abs(argmax_theta - t) for t in (math.pi / 2.0, -math.pi / 2.0))
            <= step + 1e-12
        )
        argmin_theta = float(thetas[int(np.argmin(values))])
        assert (
            min(abs(argmin_theta - t) for t in (0.0, math.pi, -math.pi))
            <= step + 1e-12
        )
        if a == A:
            anchor = float(values[int(np.argmin(np.abs(thetas)))])
    elapsed = time.perf_counter() - start
    assert 0.03 <= anchor <= 0.05
    assert elapsed < 5.0
    _report(
        "fig1 reproduction",
        f"delta_U(0) = {anchor:.5f} at the working width; three 256-point "
        f"scans in {elapsed:.2f} s",
    )


def test_central_identity():
    """T(-1)(m,theta) equals the coherent projector elementwise, 1e-10."""
    space = basis.RotorSpace(16)
    table = mapping.build_kernel_table(A, 2 * space.M, 256)
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(25):
        m0 = int(rng.integers(-8, 9))
        th0 = float(rng.uniform(-np.pi, np.pi))
        state = coherent.coherent_state(space, coherent.CoherentLabel(m0, th0, A))
        projector = np.outer(state.amplitudes, state.amplitudes.conj())
        kernel = mapping.kernel_matrix(space, A, -1.0, m0, th0, table)
        worst = max(worst, float(np.max(np.abs(kernel.entries - projector))))
    assert worst <= 1e-10
    _report("central identity", f"max elementwise residual {worst:.3e} over 25 labels")


def test_trace_identities():
    """Unit trace for six orders; opposite-order pair traces are Dirichlet."""
    space = basis.RotorSpace(32)
    table = mapping.build_kernel_table(A, 2 * space.M, 256)
    rng = np.random.default_rng(102)
    worst_trace = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SingularKernelWarning)
        warnings.simplefilter("ignore", RuntimeWarning)
        for s in (0.0, 1.0, -1.0, 0.5, -0.5, 0.3 + 0.4j):
            for _ in range(10):
                m = int(rng.integers(-4, 5))
                theta = float(rng.uniform(-np.pi, np.pi))
                kernel = mapping.kernel_matrix(space, A, s, m, theta, table)
                trace = complex(np.sum(np.diag(kernel.entries)))
                worst_trace = max(worst_trace, abs(trace - 1.0))
    assert worst_trace <= 1e-10

    pair_table = mapping.build_kernel_table(A, 24, 128)
    worst_pair = 0.0
    for s in (0.0, 0.5, -1.0, 0.3 + 0.4j):
        for dm in (1, 2, 5):
            worst_pair = max(
                worst_pair, abs(mapping.pair_trace(A, -s, s, dm, 0.9, pair_table))
            )
        for dtheta in (0.0, 0.31, -2.2):
            value = mapping.pair_trace(A, -s, s, 0, dtheta, pair_table)
            closed = complex(np.sum(np.exp(1j * pair_table.l_values * dtheta)))
            worst_pair = max(worst_pair, abs(value - closed))
    assert worst_pair <= 1e-10
    _report(
        "trace identities",
        f"|Tr T - 1| <= {worst_trace:.3e}; pair-trace residual {worst_pair:.3e}",
    )


def test_overlap_oracle():
    """Closed-form overlap against the brute-force contraction, 3 widths.

    Relative error is measured against the cancellation-free term scale
    sum |a_k||b_k| (the conditioning floor of either route in doubles).
    """
    rng = np.random.default_rng(103)
    worst = 0.0
    for a in ALL_WIDTHS:
        space = basis.RotorSpace(coherent.default_truncation(a) + 8)
        for _ in range(34):
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
            worst = max(worst, abs(brute - closed) / max(scale, 1e-30))
    assert worst <= 1e-12
    _report("overlap oracle", f"worst conditioned relative error {worst:.3e} (102 pairs)")


def test_hierarchy():
    """Smoothing arrows and the diagonal-weight reconstruction."""
    space = basis.RotorSpace(16)
    grid = mapping.full_period_grid(128)
    table = mapping.build_kernel_table(A, 2 * space.M, 128)

    rng = np.random.default_rng(104)
    raw = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    block = raw @ raw.conj().T
    block /= np.trace(block).real
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    i0 = space.index_of(-2)
    mat[i0 : i0 + 5, i0 : i0 + 5] = block
    rho = basis.DensityOperator(basis.OperatorMatrix(space, mat))

    wigner = quasiprob.wigner(rho, A, grid, table=table)
    husimi_smooth = quasiprob.smooth(wigner, 1.0, table)
    husimi_direct = quasiprob.husimi(rho, A, grid)
    res_smooth = float(np.max(np.abs(husimi_smooth.values - husimi_direct.values)))
    assert res_smooth <= 1e-8

    rho_th = basis.diagonal_density(space, np.exp(-2.0 * space.labels**2))
    p_th = quasiprob.glauber_sudarshan(rho_th, A, grid, table=table)
    h_conv = quasiprob.husimi_from_glauber(p_th, A)
    h_th = quasiprob.husimi(rho_th, A, grid)
    res_conv = float(np.max(np.abs(h_conv.values - h_th.values)))
    assert res_conv <= 1e-8

    grid_fine = mapping.full_period_grid(256)
    table_fine = mapping.build_kernel_table(A, 2 * space.M, 256)
    label = coherent.CoherentLabel(2, 0.8, A)
    rho_c = basis.pure_density(coherent.coherent_state(space, label))
    p = quasiprob.glauber_sudarshan(rho_c, A, grid_fine, table=table_fine)
    rebuilt = np.zeros((space.dim, space.dim), dtype=complex)
    peak = float(np.max(np.abs(p.values)))
    for i, m0 in enumerate(grid_fine.m_values):
        if np.max(np.abs(p.values[i])) < 1e-9 * peak:
            continue
        for j, th in enumerate(grid_fine.theta):
            amps = coherent.coherent_amplitudes(
                space, coherent.CoherentLabel(int(m0), float(th), A)
            )
            norm = float(np.linalg.norm(amps))
            if norm < 1e-8:
                continue
            rebuilt += (
                p.values[i, j] * np.outer(amps / norm, amps.conj() / norm)
            ) / grid_fine.n_theta
    res_glauber = float(np.max(np.abs(rebuilt - rho_c.entries)))
    assert res_glauber <= 1e-6
    _report(
        "hierarchy",
        f"smooth(W)->H {res_smooth:.3e}; |K|^2 route {res_conv:.3e}; "
        f"diagonal-weight reconstruction {res_glauber:.3e}",
    )


def test_named_distribution_anchors():
    """Kronecker Wigner ridge, fixture Husimi profile, norms, negativity."""
    space = basis.RotorSpace(16)
    grid = mapping.full_period_grid(128)
    table = mapping.build_kernel_table(A, 2 * space.M, 128)

    rho_eig = basis.pure_density(basis.basis_state(space, 2))
    w_eig = quasiprob.wigner(rho_eig, A, grid, table=table)
    target = np.zeros_like(w_eig.values)
    target[np.nonzero(grid.m_values == 2)[0][0], :] = 1.0
    res_kron = float(np.max(np.abs(w_eig.values - target)))
    assert res_kron <= 1e-10

    h_eig = quasiprob.husimi(rho_eig, A, grid)
    res_husimi = 0.0
    for k in (0, 1, 2, 3):
        ref = load_fixture("quasiprob", f"husimi_eigenstate_offset{k}").real
        idx = np.nonzero(grid.m_values == 2 + k)[0][0]
        res_husimi = max(res_husimi, float(np.max(np.abs(h_eig.values[idx].real - ref))))
    assert res_husimi <= 1e-10

    worst_norm = 0.0
    for dist in (w_eig, h_eig):
        worst_norm = max(worst_norm, abs(dist.normalization() - 1.0))
    amps = np.zeros(space.dim, dtype=complex)
    amps[space.index_of(0)] = 1.0 / math.sqrt(2.0)
    amps[space.index_of(2)] = 1.0 / math.sqrt(2.0)
    w_cat = quasiprob.wigner(
        basis.pure_density(basis.PureState(space, amps)), A, grid, table=table
    )
    worst_norm = max(worst_norm, abs(w_cat.normalization() - 1.0))
    assert worst_norm <= 1e-9
    most_negative = float(np.min(w_cat.values.real))
    assert most_negative < -1e-3
    _report(
        "named distributions",
        f"Kronecker ridge {res_kron:.3e}; Husimi profile vs fixture "
        f"{res_husimi:.3e}; norms within {worst_norm:.3e}; "
        f"negativity {most_negative:.3f}",
    )


def test_appendix_suite():
    """Weyl relation, derivative convention, completeness, fermion phase."""
    space = basis.RotorSpace(16)
    rng = np.random.default_rng(105)
    worst_weyl = 0.0
    for _ in range(20):
        m = int(rng.integers(-4, 5))
        theta = float(rng.uniform(-np.pi, np.pi))
        exp_j = basis.exp_j_matrix(space, -theta).entries
        exp_t = basis.exp_theta_matrix(space, m).entries
        lhs = exp_j @ exp_t
        rhs = np.exp(1j * m * theta) * (exp_t @ exp_j)
        keep = np.abs(space.labels) <= space.M - abs(m)
        block = np.ix_(keep, keep)
        worst_weyl = max(worst_weyl, float(np.max(np.abs(lhs[block] - rhs[block]))))
    assert worst_weyl <= 1e-12

    vac = coherent.vacuum(basis.RotorSpace(12), A)
    res_deriv = basis.derivative_check(vac, basis.theta_grid(128))
    assert res_deriv <= 1e-8

    res_complete = basis.angle_completeness_residual(basis.RotorSpace(16), 64)
    assert res_complete <= 1e-12

    fermion = basis.RotorSpace(8, sector=basis.FERMION)
    state = coherent.vacuum(fermion, A)
    rotated = basis.apply_exp_j(state, 2.0 * math.pi)
    res_fermion = float(np.max(np.abs(rotated.amplitudes + state.amplitudes)))
    assert res_fermion <= 1e-13
    _report(
        "appendix suite",
        f"Weyl {worst_weyl:.3e}; J-derivative {res_deriv:.3e}; "
        f"angle completeness {res_complete:.3e}; fermion phase residual "
        f"{res_fermion:.3e}",
    )


def test_completeness_window():
    """Coherent-state resolution of unity at the reference configuration."""
    residual = coherent.completeness_residual(
        basis.RotorSpace(16), A, m_window=24, n_theta=64
    )
    assert residual <= 1e-10
    _report("completeness", f"interior residual {residual:.3e}")
