"""Named quasiprobability distributions and their smoothing hierarchy.

Husimi (s = -1), Wigner (s = 0) and Glauber-Sudarshan (s = +1) are the
three distinguished members of the s-family.  Coarser members arise from
finer ones by convolution with the kernel

    z(u)(dm, dth) = sum_l (1/2pi) int dalpha e^{i(l*dth - alpha*dm)}
                    [K(l, alpha)]**u,          Re(u) >= 0,

carried out here as multiplication by K**u on the exact (l, alpha)
lattice shared with the mapping kernel, so that smoothed and directly
computed distributions live on identical truncations.
"""

from __future__ import annotations

import numpy as np

from .basis import DensityOperator, RotorSpace, theta_grid
from .coherent import CoherentLabel, _width_value, coherent_amplitudes, overlap_kernel
from .errors import HierarchyDirectionError, ParameterDomainError
from .mapping import (
    Distribution,
    KernelTable,
    PhaseGrid,
    build_kernel_table,
    expectation_table,
    pair_trace,
    weighted_chi_from_distribution,
)

_REAL_TOL = 1e-10


def _default_table(space: RotorSpace, a, grid: PhaseGrid) -> KernelTable:
    # Cap the l range just under the theta grid's resolving power so the
    # spectral inversion behind smooth() stays alias-free.
    l_max = min(2 * space.M, (grid.n_theta - 1) // 2)
    return build_kernel_table(a, l_max=l_max, n_alpha=grid.n_theta)


def husimi(
    rho: DensityOperator, a, grid: PhaseGrid, table: KernelTable | None = None
) -> Distribution:
    """Husimi function <m,theta|rho|m,theta> evaluated on the grid.

    Computed directly through coherent-state expectation values (the
    projector route); the kernel route with s = -1 must agree to 1e-10
    and is exercised as a cross-check in the tests, not here.
    """
    width = _width_value(a)
    space = rho.space
    values = np.empty((grid.n_m, grid.n_theta), dtype=float)
    labels = space.labels
    for i, m0 in enumerate(grid.m_values):
        # Columns hold |m0, theta_j> amplitudes: combined phase
        # exp(-i*theta_j*(m - m0/2)) on the clipped Gaussian profile.
        amps = coherent_amplitudes(space, CoherentLabel(int(m0), 0.0, width))
        phases = np.exp(-1j * np.outer(labels - 0.5 * m0, grid.theta))
        cols = amps[:, None] * phases
        values[i] = np.real(np.einsum("ij,ik,kj->j", cols.conj(), rho.entries, cols))
    diagnostics = {"route": "projector", "tail_ratio": 0.0, "alpha_offset": False}
    return Distribution(
        s=-1.0,
        a=width,
        space_M=space.M,
        grid=grid,
        values=values.astype(complex),
        diagnostics=diagnostics,
    )


def wigner(
    rho: DensityOperator, a, grid: PhaseGrid, table: KernelTable | None = None
) -> Distribution:
    """Wigner function, the s = 0 member, via the kernel route."""
    if table is None:
        table = _default_table(rho.space, a, grid)
    dist = expectation_table(rho, 0.0, grid, table)
    imag_peak = float(np.max(np.abs(dist.values.imag))) if dist.values.size else 0.0
    dist.diagnostics["imag_peak"] = imag_peak
    return dist


def glauber_sudarshan(
    rho: DensityOperator,
    a,
    grid: PhaseGrid,
    l_cap: int | None = None,
    table: KernelTable | None = None,
) -> Distribution:
    """Glauber-Sudarshan weight, the s = +1 member.

    Uses the half-offset alpha grid (the inverse kernel power is singular
    on the lattice zeros of the standard grid).  The l sum is capped at
    ``l_cap``; growing l shells raise ConvergenceError, while the
    marginal flat-shell case (coherent-state input) is returned as the
    finite-truncation mollification of the delta weight, with the shell
    structure reported in the ``tail_ratio`` diagnostic.
    """
    space = rho.space
    if l_cap is None:
        l_cap = 2 * space.M
    if table is None:
        l_max = min(l_cap, 2 * space.M, (grid.n_theta - 1) // 2)
        table = build_kernel_table(a, l_max=l_max, n_alpha=grid.n_theta)
    elif not table.half_offset:
        raise ParameterDomainError("P-function evaluation needs a half-offset table")
    return expectation_table(rho, 1.0, grid, table, check_divergence=True)


def smoothing_kernel(a, u, dm: int, dtheta: float, table: KernelTable) -> complex:
    """Pointwise hierarchy kernel z(u)(dm, dtheta).

    Delegates to the pair-trace formula through u = -(s1+s2) with the
    order split evenly, so the evaluation shares every convention with
    the trace identities.  Defined for Re(u) >= 0 only.
    """
    u = complex(u)
    if u.real < -1e-12:
        raise HierarchyDirectionError(
            f"smoothing kernel needs Re(u) >= 0, got {u.real:.6g}"
        )
    return pair_trace(a, -0.5 * u, -0.5 * u, dm, dtheta, table)


def smooth(f: Distribution, u, table: KernelTable) -> Distribution:
    """Convolve a distribution with z(u); the s tag drops by u.

    Implemented in the Fourier domain on the table's (l, alpha) lattice:
    the inverse transform of ``f`` is multiplied by K**u and transformed
    back, which is the circular convolution with the sampled kernel and
    keeps both routes on one truncation.
    """
    u = complex(u)
    if u.real < -1e-12:
        raise HierarchyDirectionError(
            f"smoothing direction needs Re(u) >= 0, got {u.real:.6g}"
        )
    weights = weighted_chi_from_distribution(f, table)
    smoothed = table.powers(u) * weights
    grid = f.grid
    half_shift = np.exp(-0.5j * np.outer(table.l_values, table.alpha))
    m_phases = np.exp(1j * np.outer(table.alpha, grid.m_values))
    v_table = ((smoothed * half_shift) @ m_phases) / table.n_alpha
    theta_phases = np.exp(-1j * np.outer(grid.theta, table.l_values))
    values = (theta_phases @ v_table).T
    diagnostics = dict(f.diagnostics)
    diagnostics["smoothed_by"] = complex(u)
    return Distribution(
        s=complex(f.s) - u,
        a=f.a,
        space_M=f.space_M,
        grid=grid,
        values=values,
        diagnostics=diagnostics,
    )


def husimi_from_glauber(f: Distribution, a, grid: PhaseGrid | None = None) -> Distribution:
    """Husimi values by convolving a Glauber-Sudarshan weight with the
    squared coherent-state overlap |K(m'-m, th'-th)|^2.

    The kernel here is a function on phase space itself (not the
    (l,alpha) lattice), so this is an independent route to the double
    smoothing; the convolution is circular on the full-period window.
    """
    if grid is None:
        grid = f.grid
    if grid.n_m != f.grid.n_m or grid.n_theta != f.grid.n_theta:
        raise ParameterDomainError("output grid must match the input grid")
    width = _width_value(a)
    n_m, n_th = grid.n_m, grid.n_theta
    # Tabulate z(dm, dth) = |K(dm, dth)|^2 with dm on the centered window
    # aliases; the Gaussian decay makes the wraparound negligible.
    dm_values = np.arange(n_m) - n_m // 2
    dgrid = theta_grid(n_th)
    z = np.empty((n_m, n_th), dtype=float)
    for i, dm in enumerate(dm_values):
        z[i] = np.abs(overlap_kernel(width, int(dm), dgrid)) ** 2
    # circular cross-correlation H(x) = sum_y z(y - x) P(y) / N_theta;
    # z is even in both arguments, so correlation equals convolution.
    z_roll = np.roll(z, (-(n_m // 2), -(n_th // 2)), axis=(0, 1))
    values = (
        np.fft.ifft2(np.fft.fft2(f.values) * np.fft.fft2(z_roll)) / n_th
    )
    diagnostics = dict(f.diagnostics)
    diagnostics["route"] = "overlap-squared convolution"
    return Distribution(
        s=-1.0,
        a=width,
        space_M=f.space_M,
        grid=grid,
        values=values,
        diagnostics=diagnostics,
    )


def distribution_summary(dist: Distribution) -> dict:
    """JSON-ready summary: normalization, range, negativity, tails."""
    real_part = dist.values.real
    negativity = float(
        np.sum(np.where(real_part < 0.0, -real_part, 0.0)) / dist.grid.n_theta
    )
    return {
        "s": [dist.s.real, dist.s.imag] if isinstance(dist.s, complex) else [float(dist.s), 0.0],
        "normalization": float(dist.normalization().real),
        "min": float(np.min(real_part)),
        "max": float(np.max(real_part)),
        "negativity_volume": negativity,
        "tail_ratio": dist.tail_ratio(),
    }
