"""Invariant battery behind the ``verify`` CLI subcommand.

Each check returns a nonnegative residual compared against its own
tolerance; a suite passes when every residual stays below tolerance.
Checks are deterministic (fixed seeds, fixed summation orders).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import basis, coherent, displacement, mapping, quasiprob, uncertainty
from .errors import SingularKernelWarning

DEFAULT_WIDTH = 1.0 / (2.0 * math.pi)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def _random_hermitian_density(space, rng, support: int):
    d = 2 * support + 1
    raw = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    block = raw @ raw.conj().T
    block /= np.trace(block).real
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    i0 = space.index_of(-support)
    mat[i0 : i0 + d, i0 : i0 + d] = block
    return basis.DensityOperator(basis.OperatorMatrix(space, mat))


# ---------------------------------------------------------------------------
# kernel suite


def check_trace_identity() -> float:
    a = DEFAULT_WIDTH
    space = basis.RotorSpace(32)
    rng = np.random.default_rng(11)
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SingularKernelWarning)
        warnings.simplefilter("ignore", RuntimeWarning)
        for s in (0.0, 1.0, -1.0, 0.5, -0.5, 0.3 + 0.4j):
            table = mapping.build_kernel_table(a, 2 * space.M, 256)
            for _ in range(3):
                m = int(rng.integers(-4, 5))
                theta = float(rng.uniform(-np.pi, np.pi))
                T = mapping.kernel_matrix(space, a, s, m, theta, table)
                diag = np.diag(T.entries)
                worst = max(worst, abs(complex(np.sum(diag)) - 1.0))
    return worst


def check_central_identity() -> float:
    a = DEFAULT_WIDTH
    space = basis.RotorSpace(16)
    table = mapping.build_kernel_table(a, 2 * space.M, 256)
    rng = np.random.default_rng(12)
    worst = 0.0
    for _ in range(8):
        m0 = int(rng.integers(-8, 9))
        th0 = float(rng.uniform(-np.pi, np.pi))
        state = coherent.coherent_state(space, coherent.CoherentLabel(m0, th0, a))
        projector = np.outer(state.amplitudes, state.amplitudes.conj())
        T = mapping.kernel_matrix(space, a, -1.0, m0, th0, table)
        worst = max(worst, float(np.max(np.abs(T.entries - projector))))
    return worst


def check_pair_trace_orthogonality() -> float:
    a = DEFAULT_WIDTH
    table = mapping.build_kernel_table(a, 24, 128)
    rng = np.random.default_rng(13)
    worst = 0.0
    for s in (0.0, 0.5, -1.0, 0.3 + 0.4j):
        for _ in range(4):
            dth = float(rng.uniform(-np.pi, np.pi))
            dm = int(rng.integers(1, 6))
            worst = max(worst, abs(mapping.pair_trace(a, -s, s, dm, dth, table)))
            closed = complex(np.sum(np.exp(1j * table.l_values * dth)))
            worst = max(
                worst, abs(mapping.pair_trace(a, -s, s, 0, dth, table) - closed)
            )
    return worst


def check_kernel_hermiticity() -> float:
    a = DEFAULT_WIDTH
    space = basis.RotorSpace(8)
    table = mapping.build_kernel_table(a, 2 * space.M, 128)
    worst = 0.0
    for s in (0.0, -1.0, 0.5, -0.5):
        T = mapping.kernel_matrix(space, a, s, 1, 0.4, table).entries
        scale = max(1.0, float(np.max(np.abs(T))))
        worst = max(worst, float(np.max(np.abs(T - T.conj().T))) / scale)
    T_s = mapping.kernel_matrix(space, a, 0.3 + 0.4j, -2, 1.3, table).entries
    T_sbar = mapping.kernel_matrix(space, a, 0.3 - 0.4j, -2, 1.3, table).entries
    scale = np.maximum(np.abs(T_s), 1.0)
    worst = max(worst, float(np.max(np.abs(T_s.conj().T - T_sbar) / scale.T)))
    return worst


def check_displacement_projector_trace() -> float:
    # Tr[D(l,alpha)^dag |m,th><m,th|] = exp(-i(l*th - m*alpha)) K(l,alpha)
    a = DEFAULT_WIDTH
    space = basis.RotorSpace(16)
    rng = np.random.default_rng(14)
    worst = 0.0
    for _ in range(12):
        l = int(rng.integers(-4, 5))
        alpha = float(rng.uniform(-np.pi, np.pi))
        m0 = int(rng.integers(-4, 5))
        th0 = float(rng.uniform(-np.pi, np.pi))
        state = coherent.coherent_state(space, coherent.CoherentLabel(m0, th0, a))
        proj = np.outer(state.amplitudes, state.amplitudes.conj())
        d_op = displacement.displacement_matrix(
            space, displacement.DisplacementLabel(l, alpha)
        ).entries
        lhs = complex(np.trace(d_op.conj().T @ proj))
        rhs = np.exp(-1j * (l * th0 - m0 * alpha)) * coherent.overlap_kernel(
            a, l, alpha
        )
        worst = max(worst, abs(lhs - rhs))
    return worst


def check_overlap_oracle() -> float:
    # Relative error measured against the cancellation-free bound
    # sum_k |a_k b_k|: tiny overlaps arise from near-total phase
    # cancellation of O(1) terms, and neither route (nor any double
    # computation) carries information below eps times that term scale.
    rng = np.random.default_rng(15)
    worst = 0.0
    for a in (1 / (20 * math.pi), DEFAULT_WIDTH, 10 / (2 * math.pi)):
        space = basis.RotorSpace(coherent.default_truncation(a) + 8)
        for _ in range(40):
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
    return worst


def check_kernel_symmetries() -> float:
    a = DEFAULT_WIDTH
    alphas = np.linspace(-np.pi, np.pi, 41)
    worst = 0.0
    for l in range(0, 7):
        row_p = coherent.overlap_kernel(a, l, alphas)
        row_m = coherent.overlap_kernel(a, -l, alphas)
        row_neg = coherent.overlap_kernel(a, l, -alphas)
        worst = max(worst, float(np.max(np.abs(row_neg - row_m))))
        worst = max(worst, float(np.max(np.abs(row_p.imag))))
        over = np.max(np.abs(row_p)) - 1.0
        worst = max(worst, max(0.0, float(over)))
    return worst


def check_coherent_completeness() -> float:
    return coherent.completeness_residual(
        basis.RotorSpace(16), DEFAULT_WIDTH, m_window=24, n_theta=64
    )


# ---------------------------------------------------------------------------
# hierarchy suite


def _hierarchy_setup():
    a = DEFAULT_WIDTH
    space = basis.RotorSpace(16)
    grid = mapping.full_period_grid(128)
    table = mapping.build_kernel_table(a, 2 * space.M, 128)
    rng = np.random.default_rng(21)
    rho = _random_hermitian_density(space, rng, support=2)
    return a, space, grid, table, rho


def check_husimi_route_equivalence() -> float:
    a, space, grid, table, rho = _hierarchy_setup()
    h_proj = quasiprob.husimi(rho, a, grid)
    h_kern = mapping.expectation_table(rho, -1.0, grid, table)
    return float(np.max(np.abs(h_proj.values - h_kern.values)))


def check_wigner_reality() -> float:
    a, space, grid, table, rho = _hierarchy_setup()
    w = quasiprob.wigner(rho, a, grid, table=table)
    return float(np.max(np.abs(w.values.imag)))


def check_smoothing_arrows() -> float:
    a, space, grid, table, rho = _hierarchy_setup()
    w = quasiprob.wigner(rho, a, grid, table=table)
    h_direct = quasiprob.husimi(rho, a, grid)
    h_smooth = quasiprob.smooth(w, 1.0, table)
    worst = float(np.max(np.abs(h_smooth.values - h_direct.values)))
    w_same = quasiprob.smooth(w, 0.0, table)
    worst = max(worst, float(np.max(np.abs(w_same.values - w.values))))
    lab = coherent.CoherentLabel(1, -0.9, a)
    rho_c = basis.pure_density(coherent.coherent_state(space, lab))
    p = quasiprob.glauber_sudarshan(rho_c, a, grid, table=table)
    w_from_p = quasiprob.smooth(p, 1.0, table)
    w_c = quasiprob.wigner(rho_c, a, grid, table=table)
    worst = max(worst, float(np.max(np.abs(w_from_p.values - w_c.values))))
    return worst


def check_husimi_from_glauber() -> float:
    a, space, grid, table, _ = _hierarchy_setup()
    weights = np.exp(-2.0 * space.labels**2)
    rho_th = basis.diagonal_density(space, weights)
    p = quasiprob.glauber_sudarshan(rho_th, a, grid, table=table)
    h_conv = quasiprob.husimi_from_glauber(p, a)
    h_direct = quasiprob.husimi(rho_th, a, grid)
    return float(np.max(np.abs(h_conv.values - h_direct.values)))


def check_glauber_reconstruction() -> float:
    a = DEFAULT_WIDTH
    space = basis.RotorSpace(16)
    grid = mapping.full_period_grid(256)
    table = mapping.build_kernel_table(a, 2 * space.M, 256)
    lab = coherent.CoherentLabel(2, 0.8, a)
    rho_c = basis.pure_density(coherent.coherent_state(space, lab))
    p = quasiprob.glauber_sudarshan(rho_c, a, grid, table=table)
    rebuilt = np.zeros((space.dim, space.dim), dtype=complex)
    peak = float(np.max(np.abs(p.values)))
    for i, m0 in enumerate(grid.m_values):
        if np.max(np.abs(p.values[i])) < 1e-9 * peak:
            continue
        for j, th in enumerate(grid.theta):
            amps = coherent.coherent_amplitudes(
                space, coherent.CoherentLabel(int(m0), float(th), a)
            )
            norm = float(np.linalg.norm(amps))
            if norm < 1e-8:
                # The projector does not exist inside this truncation; the
                # P weight vanishes identically there as well.
                continue
            rebuilt += (
                p.values[i, j] * np.outer(amps / norm, amps.conj() / norm)
            ) / grid.n_theta
    return float(np.max(np.abs(rebuilt - rho_c.entries)))


def check_normalizations() -> float:
    a, space, grid, table, rho = _hierarchy_setup()
    worst = 0.0
    for dist in (
        quasiprob.husimi(rho, a, grid),
        quasiprob.wigner(rho, a, grid, table=table),
    ):
        worst = max(worst, abs(dist.normalization() - 1.0))
    return worst


def check_wigner_negativity_witness() -> float:
    a, space, grid, table, _ = _hierarchy_setup()
    amps = np.zeros(space.dim, dtype=complex)
    amps[space.index_of(0)] = 1 / math.sqrt(2)
    amps[space.index_of(2)] = 1 / math.sqrt(2)
    w = quasiprob.wigner(
        basis.pure_density(basis.PureState(space, amps)), a, grid, table=table
    )
    most_negative = float(np.min(w.values.real))
    return 0.0 if most_negative < -1e-3 else 1.0


def check_covariance() -> float:
    a, space, grid, table, rho = _hierarchy_setup()
    shift_m, shift_j = 3, 16  # theta shift by a whole grid step count
    shift_theta = float(grid.theta[shift_j] - grid.theta[0])
    d_op = displacement.displacement_matrix(
        space, displacement.DisplacementLabel(shift_m, shift_theta)
    ).entries
    moved = basis.DensityOperator(
        basis.OperatorMatrix(space, d_op @ rho.entries @ d_op.conj().T)
    )
    worst = 0.0
    for s in (-1.0, 0.0):
        base = mapping.expectation_table(rho, s, grid, table).values
        shifted = mapping.expectation_table(moved, s, grid, table).values
        rolled = np.roll(np.roll(base, shift_m, axis=0), shift_j, axis=1)
        keep = np.abs(grid.m_values) <= space.M
        worst = max(worst, float(np.max(np.abs(shifted[keep] - rolled[keep]))))
    return worst


# ---------------------------------------------------------------------------
# appendix suite


def check_weyl_relation() -> float:
    space = basis.RotorSpace(16)
    rng = np.random.default_rng(31)
    worst = 0.0
    for _ in range(20):
        m = int(rng.integers(-4, 5))
        theta = float(rng.uniform(-np.pi, np.pi))
        exp_j = basis.exp_j_matrix(space, -theta).entries  # exp(+i theta J)
        exp_t = basis.exp_theta_matrix(space, m).entries
        lhs = exp_j @ exp_t
        rhs = np.exp(1j * m * theta) * (exp_t @ exp_j)
        keep = np.abs(space.labels) <= space.M - abs(m)
        block = np.ix_(keep, keep)
        worst = max(worst, float(np.max(np.abs(lhs[block] - rhs[block]))))
    return worst


def check_j_derivative() -> float:
    space = basis.RotorSpace(12)
    state = coherent.vacuum(space, DEFAULT_WIDTH)
    return basis.derivative_check(state, basis.theta_grid(128))


def check_angle_completeness() -> float:
    return basis.angle_completeness_residual(basis.RotorSpace(16), 64)


def check_fermion_rotation() -> float:
    space = basis.RotorSpace(8, sector=basis.FERMION)
    state = coherent.vacuum(space, DEFAULT_WIDTH)
    rotated = basis.apply_exp_j(state, 2.0 * np.pi)
    return float(np.max(np.abs(rotated.amplitudes + state.amplitudes)))


def check_synthesis_roundtrip() -> float:
    space = basis.RotorSpace(10)
    rng = np.random.default_rng(32)
    raw = rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim)
    state = basis.normalized_state(space, raw)
    grid = basis.theta_grid(64)
    samples = basis.angle_synthesize(state, grid)
    recovered = basis.angle_analyze(space, samples, grid)
    worst = float(np.max(np.abs(recovered - state.amplitudes)))
    parseval = abs(2.0 * np.pi * np.mean(np.abs(samples) ** 2) - 1.0)
    return max(worst, parseval)


_KERNEL_CHECKS = [
    ("trace_identity", check_trace_identity, 1e-10),
    ("central_identity", check_central_identity, 1e-10),
    ("pair_trace_orthogonality", check_pair_trace_orthogonality, 1e-10),
    ("kernel_hermiticity", check_kernel_hermiticity, 1e-12),
    ("displacement_projector_trace", check_displacement_projector_trace, 1e-12),
    ("overlap_oracle", check_overlap_oracle, 1e-12),
    ("kernel_symmetries", check_kernel_symmetries, 1e-12),
    ("coherent_completeness", check_coherent_completeness, 1e-10),
]

_HIERARCHY_CHECKS = [
    ("husimi_route_equivalence", check_husimi_route_equivalence, 1e-10),
    ("wigner_reality", check_wigner_reality, 1e-10),
    ("smoothing_arrows", check_smoothing_arrows, 1e-8),
    ("husimi_from_glauber", check_husimi_from_glauber, 1e-8),
    ("glauber_reconstruction", check_glauber_reconstruction, 1e-6),
    ("normalizations", check_normalizations, 1e-9),
    ("wigner_negativity_witness", check_wigner_negativity_witness, 0.5),
    ("covariance", check_covariance, 1e-9),
]

_APPENDIX_CHECKS = [
    ("weyl_relation", check_weyl_relation, 1e-12),
    ("j_derivative", check_j_derivative, 1e-8),
    ("angle_completeness", check_angle_completeness, 1e-12),
    ("fermion_rotation_phase", check_fermion_rotation, 1e-15),
    ("synthesis_roundtrip", check_synthesis_roundtrip, 1e-10),
]

SUITES: dict[str, list[tuple[str, Callable[[], float], float]]] = {
    "kernel": _KERNEL_CHECKS,
    "hierarchy": _HIERARCHY_CHECKS,
    "appendix": _APPENDIX_CHECKS,
}


def run_suite(name: str, tol_override: float | None = None) -> list[CheckResult]:
    """Run one suite ('kernel', 'hierarchy', 'appendix') or 'all'."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError(f"unknown suite {name!r}; pick from all, {', '.join(SUITES)}")
    results = []
    for suite in names:
        for check_name, fn, tol in SUITES[suite]:
            residual = float(fn())
            results.append(
                CheckResult(
                    suite=suite,
                    name=check_name,
                    residual=residual,
                    tol=tol if tol_override is None else tol_override,
                )
            )
    return results
