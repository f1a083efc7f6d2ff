"""The s-ordered mapping kernel and operator <-> function transforms.

The kernel family

    T(s)(m,theta) = sum_l (1/2pi) int dalpha exp[-i(l*theta - m*alpha)]
                    D(l,alpha) [K(l,alpha)]**(-s)

turns operators into phase-space functions and back.  All alpha
integrals are N-point rectangle rules (spectrally accurate for the
Gaussian-tailed integrands appearing here), taken either on the
standard grid alpha_j = -pi + 2*pi*j/N or, when a negative kernel power
would blow up on the lattice zeros at odd l, alpha = +-pi, on the
half-offset grid alpha_j = -pi + 2*pi*(j+1/2)/N.

Phase-space evaluation never materializes T at grid points: traces
factor through the characteristic table chi(l, alpha) = Tr[exp(il*Theta)
exp(-i*alpha*J) rho], and diagonals of operators are recovered from chi
by exact inverse Fourier sums.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .basis import DensityOperator, OperatorMatrix, RotorSpace, theta_grid
from .coherent import overlap_kernel, _width_value
from .errors import (
    AliasingError,
    ConvergenceError,
    ParameterDomainError,
    SingularKernelWarning,
)

_SUMMAND_CUTOFF = 1e-14
_GROWTH_FACTOR = 1.02


@dataclass(frozen=True)
class SParameter:
    """Complex ordering parameter restricted to the closed unit disk."""

    s: complex

    def __post_init__(self):
        value = complex(self.s)
        if abs(value) > 1.0 + 1e-12:
            raise ParameterDomainError(f"|s| must be <= 1, got {abs(value):.6g}")
        object.__setattr__(self, "s", value)


def _s_value(s) -> complex:
    return complex(s.s) if isinstance(s, SParameter) else complex(s)


def alpha_grid(n: int, half_offset: bool) -> np.ndarray:
    """Quadrature nodes on [-pi, pi); optionally shifted by half a step."""
    if n < 2:
        raise ParameterDomainError("quadrature grid needs at least 2 nodes")
    shift = 0.5 if half_offset else 0.0
    return -np.pi + 2.0 * np.pi * (np.arange(n) + shift) / n


@dataclass(frozen=True)
class KernelTable:
    """Overlap-kernel samples K(l, alpha_j) and their logarithms.

    The log rows are phase-unwrapped along alpha starting from the node
    nearest alpha = 0 (where the kernel is real positive), making complex
    powers single-valued on each row.  On the boson sector the kernel is
    real and positive away from its lattice zeros, so the unwrapped
    imaginary parts vanish identically.
    """

    a: float
    l_max: int
    n_alpha: int
    half_offset: bool
    alpha: np.ndarray
    l_values: np.ndarray
    values: np.ndarray
    log_values: np.ndarray
    zero_mask: np.ndarray

    def row(self, l: int) -> np.ndarray:
        return self.values[int(l) + self.l_max]

    def powers(self, exponent: complex) -> np.ndarray:
        """Elementwise K**exponent from the unwrapped logarithm.

        Kernel zeros map to 0 for Re(exponent) > 0 and to 1 for a zero
        exponent; a negative real part next to a zero is singular and is
        reported through ``SingularKernelWarning`` with inf entries.
        """
        exponent = complex(exponent)
        if exponent == 0:
            return np.ones_like(self.values, dtype=complex)
        with np.errstate(invalid="ignore"):
            out = np.exp(exponent * self.log_values)
        if np.any(self.zero_mask):
            if exponent.real > 0:
                out[self.zero_mask] = 0.0
            elif exponent.real < 0:
                warnings.warn(
                    "negative kernel power on a lattice zero "
                    f"(exponent {exponent}); entries set to inf",
                    SingularKernelWarning,
                    stacklevel=2,
                )
                out[self.zero_mask] = np.inf
            else:
                out[self.zero_mask] = np.nan
        return out


def build_kernel_table(
    a, l_max: int, n_alpha: int, half_offset: bool = True
) -> KernelTable:
    """Tabulate K(l, alpha) for |l| <= l_max on an N-node alpha grid.

    The half-offset grid is the default for every quadrature in this
    package: it is closed under alpha -> -alpha without touching the
    antiperiodicity seam at alpha = -pi, which keeps odd-l rows exactly
    real-pairing (and keeps negative kernel powers finite).  The standard
    grid remains available for diagnostics.
    """
    width = _width_value(a)
    alpha = alpha_grid(n_alpha, half_offset)
    l_values = np.arange(-l_max, l_max + 1)
    values = np.empty((2 * l_max + 1, n_alpha), dtype=complex)
    for i, l in enumerate(l_values):
        values[i] = overlap_kernel(width, int(l), alpha)

    # Structural lattice zeros (odd l, alpha = +-pi) come out around 1e-17
    # through the closed form; mask them relative to each row's scale so
    # power evaluation treats them as genuine zeros.
    magnitudes = np.abs(values)
    row_peak = np.max(magnitudes, axis=1, keepdims=True)
    zero_mask = magnitudes <= 1e-13 * row_peak
    log_values = np.empty_like(values)
    anchor = int(np.argmin(np.abs(alpha)))
    with np.errstate(divide="ignore"):
        magnitude = np.log(np.abs(values))
    phase = np.angle(values)
    for i in range(values.shape[0]):
        row_phase = phase[i].copy()
        # Unwrap outward from the node nearest alpha = 0.
        right = np.unwrap(row_phase[anchor:])
        left = np.unwrap(row_phase[: anchor + 1][::-1])[::-1]
        row_phase[anchor:] = right
        row_phase[: anchor + 1] = left
        log_values[i] = magnitude[i] + 1j * row_phase
    log_values[zero_mask] = -np.inf
    return KernelTable(
        a=width,
        l_max=int(l_max),
        n_alpha=int(n_alpha),
        half_offset=bool(half_offset),
        alpha=alpha,
        l_values=l_values,
        values=values,
        log_values=log_values,
        zero_mask=zero_mask,
    )


def table_for_kernel_s(space: RotorSpace, a, s, n_alpha: int) -> KernelTable:
    """Kernel table sized for T(s) matrices on ``space``."""
    return build_kernel_table(a, l_max=2 * space.M, n_alpha=n_alpha)


@dataclass(frozen=True)
class PhaseGrid:
    """Discretized cylinder: integer m window times a uniform theta grid."""

    m_values: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m_values, dtype=int)
        th = np.asarray(self.theta, dtype=float)
        if m.ndim != 1 or th.ndim != 1:
            raise ParameterDomainError("grid axes must be one-dimensional")
        if np.any(np.diff(m) != 1):
            raise ParameterDomainError("m window must be consecutive integers")
        object.__setattr__(self, "m_values", m)
        object.__setattr__(self, "theta", th)

    @property
    def n_theta(self) -> int:
        return self.theta.size

    @property
    def n_m(self) -> int:
        return self.m_values.size

    def is_full_period(self, n_alpha: int) -> bool:
        return self.n_m == n_alpha


def full_period_grid(n: int) -> PhaseGrid:
    """Grid whose m window is one full period of the N-node alpha lattice."""
    return PhaseGrid(np.arange(n) - n // 2, theta_grid(n))


def windowed_grid(m_min: int, m_max: int, n_theta: int) -> PhaseGrid:
    return PhaseGrid(np.arange(m_min, m_max + 1), theta_grid(n_theta))


@dataclass
class Distribution:
    """An s-tagged complex-valued function on a PhaseGrid."""

    s: complex
    a: float
    space_M: int
    grid: PhaseGrid
    values: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    def normalization(self) -> complex:
        return complex(np.sum(self.values) / self.grid.n_theta)

    def tail_ratio(self) -> float:
        return float(self.diagnostics.get("tail_ratio", 0.0))


# ---------------------------------------------------------------------------
# characteristic table


def characteristic_function(rho: DensityOperator, l: int, alpha) -> complex | np.ndarray:
    """Tr[exp(i*l*Theta) exp(-i*alpha*J) rho] = sum_m e^{-i*alpha*m} rho[m, m+l]."""
    entries = rho.entries
    space = rho.space
    if abs(int(l)) > 2 * space.M:
        raise ParameterDomainError(f"|l| must not exceed 2M = {2 * space.M}")
    diag = np.diagonal(entries, offset=int(l))
    if int(l) >= 0:
        labels = space.labels[: diag.size]
    else:
        labels = space.labels[-int(l):]
    alpha_arr = np.atleast_1d(np.asarray(alpha, dtype=float))
    values = np.exp(-1j * np.outer(alpha_arr, labels)) @ diag
    return complex(values[0]) if np.ndim(alpha) == 0 else values


def characteristic_table(op: OperatorMatrix | DensityOperator, table: KernelTable) -> np.ndarray:
    """chi(l, alpha_j) rows for every l of ``table`` (zero past the band)."""
    entries = op.entries
    space = op.space
    chi = np.zeros((table.l_values.size, table.n_alpha), dtype=complex)
    for i, l in enumerate(table.l_values):
        l = int(l)
        if abs(l) > space.dim - 1:
            continue
        diag = np.diagonal(entries, offset=l)
        labels = space.labels[: diag.size] if l >= 0 else space.labels[-l:]
        chi[i] = np.exp(-1j * np.outer(table.alpha, labels)) @ diag
    return chi


# ---------------------------------------------------------------------------
# kernel matrices


def _quadrature_factors(table: KernelTable, exponent: complex) -> np.ndarray:
    # rows W(l, j) = exp(-i*l*alpha_j/2) * K(l,alpha_j)**exponent, the
    # alpha-integrand shared by every kernel-matrix element.
    powers = table.powers(exponent)
    half_shift = np.exp(-0.5j * np.outer(table.l_values, table.alpha))
    return powers * half_shift


def kernel_matrix(
    space: RotorSpace, a, s, m: int, theta: float, table: KernelTable
) -> OperatorMatrix:
    """Materialize T(s)(m, theta) on the truncated basis.

    Matrix elements follow the factorized quadrature
    <m1|T|m2> = e^{-i(m1-m2)theta} (1/N) sum_j e^{i alpha_j (m-(m1+m2)/2)}
                [K(m1-m2, alpha_j)]**(-s).
    """
    width = _width_value(a)
    _require_boson(space)
    if abs(width - table.a) > 1e-15:
        raise ParameterDomainError("table width does not match request")
    if table.l_max < 2 * space.M:
        raise ParameterDomainError("table l-range must cover 2M")
    s_val = _s_value(s)
    factors = _quadrature_factors(table, -s_val)
    labels = space.labels
    d = space.dim
    mat = np.empty((d, d), dtype=complex)
    # exp(i*alpha_j*(m - m2)); with the half-shift folded into `factors`,
    # the element at (m1, m2) = (m2 + l, m2) is the alpha average of
    # factors[l] * alpha_phases[:, index(m2)].
    alpha_phases = np.exp(1j * np.outer(table.alpha, m - labels))
    for offset in range(-(d - 1), d):
        row_factor = factors[offset + table.l_max]
        if offset >= 0:
            cols = np.arange(0, d - offset)
        else:
            cols = np.arange(-offset, d)
        rows = cols + offset
        qvals = (row_factor @ alpha_phases[:, cols]) / table.n_alpha
        mat[rows, cols] = qvals
    theta_phases = np.exp(-1j * theta * (labels[:, None] - labels[None, :]))
    return OperatorMatrix(space, mat * theta_phases)


def _require_boson(space: RotorSpace) -> None:
    if space.sector != "boson":
        raise ParameterDomainError(
            "the mapping-kernel calculus is defined on the boson sector"
        )


# ---------------------------------------------------------------------------
# pair traces


def pair_trace(a, s1, s2, dm: int, dtheta: float, table: KernelTable) -> complex:
    """Tr[T(s1)(m',th') T(s2)(m,th)] as a function of (dm, dth) = (m'-m, th'-th).

    Evaluates sum_l e^{i l dtheta} (1/N) sum_j e^{-i alpha_j dm}
    [K(l,alpha_j)]**(-(s1+s2)) over the table's l range in ascending
    order.  Convergent only when Re(s1+s2) <= 0; a positive real part
    makes the l terms grow and raises ConvergenceError.
    """
    width = _width_value(a)
    if abs(width - table.a) > 1e-15:
        raise ParameterDomainError("table width does not match request")
    s_sum = _s_value(s1) + _s_value(s2)
    if s_sum.real > 1e-12:
        raise ConvergenceError(
            f"pair trace diverges for Re(s1+s2) = {s_sum.real:.6g} > 0"
        )
    powers = table.powers(-s_sum)
    alpha_factor = np.exp(-1j * table.alpha * dm)
    row_sums = (powers @ alpha_factor) / table.n_alpha
    phases = np.exp(1j * table.l_values * dtheta)
    return complex(np.sum(phases * row_sums))


# ---------------------------------------------------------------------------
# operator -> function


def _phase_space_table(
    op: OperatorMatrix | DensityOperator,
    kernel_s,
    a,
    grid: PhaseGrid,
    table: KernelTable,
    summand_cutoff: float = _SUMMAND_CUTOFF,
    check_divergence: bool = False,
) -> Distribution:
    """Values Tr[T(kernel_s)(m, theta_j) op] on the grid.

    Works through the characteristic table; T is never materialized at
    grid points.  The per-|l| shell magnitudes provide the tail-ratio
    diagnostic and, when ``check_divergence``, a growing-shell detector.
    """
    width = _width_value(a)
    _require_boson(op.space)
    if abs(width - table.a) > 1e-15:
        raise ParameterDomainError("table width does not match request")
    s_val = _s_value(kernel_s)
    if s_val.real > 1e-12 and not table.half_offset:
        raise ParameterDomainError(
            "Re(s) > 0 kernels need the half-offset alpha grid "
            "(K has lattice zeros on the standard grid)"
        )
    chi = characteristic_table(op, table)
    weights = _quadrature_factors(table, -s_val) * chi

    # V[l, m] = (1/N) sum_j exp(i alpha_j m) weights[l, j]
    m_phases = np.exp(1j * np.outer(table.alpha, grid.m_values))
    v_table = (weights @ m_phases) / table.n_alpha

    shell_mag = np.max(np.abs(v_table), axis=1)
    l_abs = np.abs(table.l_values)
    order = np.argsort(l_abs, kind="stable")
    mags_by_shell = {}
    for idx in order:
        shell = int(l_abs[idx])
        mags_by_shell[shell] = max(mags_by_shell.get(shell, 0.0), float(shell_mag[idx]))
    shells = sorted(mags_by_shell)
    peak = max(mags_by_shell.values()) if mags_by_shell else 0.0

    if check_divergence and len(shells) >= 4 and peak > 0:
        last = [mags_by_shell[s] for s in shells[-3:]]
        if (
            last[-1] > _GROWTH_FACTOR * last[0]
            and last[-1] > 1e-3 * peak
        ):
            raise ConvergenceError(
                "l-sum terms are growing at the truncation cap; "
                "the requested function is distributional for this state"
            )

    theta_phases = np.exp(-1j * np.outer(grid.theta, table.l_values))
    values = (theta_phases @ v_table).T  # (n_m, n_theta)

    total_peak = float(np.max(np.abs(values))) if values.size else 0.0
    tail = mags_by_shell.get(shells[-1], 0.0) if shells else 0.0
    tail_ratio = tail / total_peak if total_peak > 0 else 0.0
    diagnostics = {
        "tail_ratio": tail_ratio,
        "alpha_offset": table.half_offset,
        "l_max": table.l_max,
        "n_alpha": table.n_alpha,
        "summand_cutoff": summand_cutoff,
    }
    return Distribution(
        s=s_val,
        a=width,
        space_M=op.space.M,
        grid=grid,
        values=values,
        diagnostics=diagnostics,
    )


def map_operator(
    op: OperatorMatrix, s, grid: PhaseGrid, table: KernelTable
) -> Distribution:
    """Phase-space coefficients Tr[T(-s)(m,theta) O] of a bounded operator.

    The result is the weight function that reproduces O against the
    T(s) family, so its tag is -s.
    """
    return _phase_space_table(op, -_s_value(s), table.a, grid, table)


def expectation_table(
    rho: DensityOperator, s, grid: PhaseGrid, table: KernelTable, **kwargs
) -> Distribution:
    """Quasiprobability table F(s)(m,theta) = Tr[T(s)(m,theta) rho]."""
    return _phase_space_table(rho, _s_value(s), table.a, grid, table, **kwargs)


# ---------------------------------------------------------------------------
# function -> operator


def weighted_chi_from_distribution(f: Distribution, table: KernelTable) -> np.ndarray:
    """Invert the phase-space transform back to its (l, alpha) spectrum.

    Returns the kernel-weighted characteristic table K**(-s) * chi that
    generated ``f``.  Exact when the distribution's m window is one full
    period of the alpha lattice and the theta grid resolves every
    tabulated l.
    """
    grid = f.grid
    if not grid.is_full_period(table.n_alpha):
        raise AliasingError(
            "inversion needs an m window of exactly one alpha-lattice period"
        )
    if grid.n_theta < 2 * table.l_max + 1:
        raise AliasingError("theta grid too coarse for the table's l range")
    # theta modes: V[l, m] = (1/N_theta) sum_j F(m, theta_j) e^{+i l theta_j}
    theta_phases = np.exp(1j * np.outer(table.l_values, grid.theta))
    v_table = (theta_phases @ f.values.T) / grid.n_theta
    # alpha modes: W[l, k] = sum_m e^{-i alpha_k m} V[l, m]
    m_phases = np.exp(-1j * np.outer(grid.m_values, table.alpha))
    weights = v_table @ m_phases
    # strip the ordering half-shift to recover K**(-s) * chi
    half_shift = np.exp(0.5j * np.outer(table.l_values, table.alpha))
    return weights * half_shift


def operator_from_chi(
    space: RotorSpace, chi: np.ndarray, table: KernelTable
) -> OperatorMatrix:
    """Rebuild the matrix whose characteristic table is ``chi``.

    Diagonals follow from rho[m, m+l] = (1/N) sum_k e^{+i alpha_k m}
    chi(l, alpha_k), exact while the basis fits inside the alpha lattice.
    """
    _require_boson(space)
    d = space.dim
    if table.n_alpha < d:
        raise AliasingError("alpha lattice too small for the basis")
    mat = np.zeros((d, d), dtype=complex)
    labels = space.labels
    for i, l in enumerate(table.l_values):
        l = int(l)
        if abs(l) > d - 1:
            continue
        size = d - abs(l)
        ms = labels[:size] if l >= 0 else labels[-l:]
        recovered = np.exp(1j * np.outer(ms, table.alpha)) @ chi[i] / table.n_alpha
        rows = np.arange(0, size) if l >= 0 else np.arange(-l, d)
        cols = rows + l
        mat[rows, cols] = recovered
    return OperatorMatrix(space, mat)


def reconstruct_operator(
    f: Distribution, table: KernelTable, space: RotorSpace
) -> OperatorMatrix:
    """Resum a distribution against the complementary kernel family.

    For f tagged t (i.e. f = Tr[T(t) . ]), this computes
    O = sum_m (1/N) sum_j f(m, theta_j) T(-t)(m, theta_j), the exact
    inverse of ``map_operator`` on matched full-period grids.
    """
    chi = weighted_chi_from_distribution(f, table)
    chi_op = table.powers(complex(f.s)) * chi
    bad = ~np.isfinite(chi_op)
    if np.any(bad):
        if np.any(np.abs(chi[bad]) > 1e-300):
            raise ConvergenceError(
                "kernel power is singular where the distribution has weight"
            )
        chi_op[bad] = 0.0
    return operator_from_chi(space, chi_op, table)


def expectation_via_phase_space(
    op: OperatorMatrix,
    rho: DensityOperator,
    s,
    grid: PhaseGrid,
    table: KernelTable,
    tail_tol: float = 1e-6,
) -> complex:
    """Tr(O rho) through the overlap of the two phase-space images.

    Pairs the operator's (-s)-coefficients with the state's
    s-distribution on the shared grid.  Raises ConvergenceError when
    either factor's tail diagnostic exceeds ``tail_tol``.
    """
    f_op = map_operator(op, s, grid, table)
    f_rho = expectation_table(rho, s, grid, table)
    for name, dist in (("operator", f_op), ("state", f_rho)):
        if dist.tail_ratio() > tail_tol:
            raise ConvergenceError(
                f"{name} image not converged (tail ratio "
                f"{dist.tail_ratio():.3g} > {tail_tol:g})"
            )
    return complex(np.sum(f_op.values * f_rho.values) / grid.n_theta)


# ---------------------------------------------------------------------------
# serialization


def save_distribution(dist: Distribution, path: str) -> None:
    """Write the CSV wire format: a header comment, then m,theta,re,im rows."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        s = complex(dist.s)
        fh.write(
            f"# s_re={s.real:.17g} s_im={s.imag:.17g} a={dist.a:.17g} "
            f"M={dist.space_M} N={dist.grid.n_theta}\n"
        )
        fh.write("m,theta,re,im\n")
        writer = csv.writer(fh)
        for i, m in enumerate(dist.grid.m_values):
            for j, theta in enumerate(dist.grid.theta):
                v = dist.values[i, j]
                writer.writerow(
                    [
                        int(m),
                        f"{theta:.17g}",
                        f"{v.real:.17g}",
                        f"{v.imag:.17g}",
                    ]
                )


def distribution_to_json_dict(dist: Distribution) -> dict:
    s = complex(dist.s)
    return {
        "s": [s.real, s.imag],
        "a": dist.a,
        "M": dist.space_M,
        "N": dist.grid.n_theta,
        "m_values": [int(m) for m in dist.grid.m_values],
        "theta": [float(t) for t in dist.grid.theta],
        "values": [
            [[float(v.real), float(v.imag)] for v in row] for row in dist.values
        ],
    }


def save_distribution_json(dist: Distribution, path: str) -> None:
    import json

    with open(path, "w", encoding="utf-8") as fh:
        json.dump(distribution_to_json_dict(dist), fh, indent=1)


def distribution_from_json_dict(payload: dict) -> Distribution:
    s = complex(payload["s"][0], payload["s"][1])
    grid = PhaseGrid(
        np.array(payload["m_values"], dtype=int),
        np.array(payload["theta"], dtype=float),
    )
    values = np.array(
        [[complex(re, im) for re, im in row] for row in payload["values"]]
    )
    return Distribution(
        s=s,
        a=float(payload["a"]),
        space_M=int(payload["M"]),
        grid=grid,
        values=values,
        diagnostics={"alpha_offset": s.real > 0, "loaded_from": "json"},
    )


def load_distribution(path: str) -> Distribution:
    """Read a distribution from either wire format (CSV or JSON)."""
    with open(path, "r", encoding="utf-8") as fh:
        head = fh.read(1)
    if head == "{":
        import json

        with open(path, "r", encoding="utf-8") as fh:
            return distribution_from_json_dict(json.load(fh))
    return _load_distribution_csv(path)


def _load_distribution_csv(path: str) -> Distribution:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("#"):
            raise ParameterDomainError("missing distribution header line")
        meta = dict(
            item.split("=", 1) for item in header[1:].split() if "=" in item
        )
        column_line = fh.readline().strip()
        if column_line != "m,theta,re,im":
            raise ParameterDomainError("unexpected distribution column header")
        rows = list(csv.reader(fh))
    s = complex(float(meta["s_re"]), float(meta["s_im"]))
    a = float(meta["a"])
    space_m = int(meta["M"])
    m_vals = sorted({int(r[0]) for r in rows})
    theta_vals = sorted({float(r[1]) for r in rows})
    grid = PhaseGrid(np.array(m_vals), np.array(theta_vals))
    values = np.zeros((len(m_vals), len(theta_vals)), dtype=complex)
    m_index = {m: i for i, m in enumerate(m_vals)}
    t_index = {t: j for j, t in enumerate(theta_vals)}
    for r in rows:
        values[m_index[int(r[0])], t_index[float(r[1])]] = complex(
            float(r[2]), float(r[3])
        )
    return Distribution(
        s=s,
        a=a,
        space_M=space_m,
        grid=grid,
        values=values,
        diagnostics={"alpha_offset": s.real > 0, "loaded_from": path},
    )
