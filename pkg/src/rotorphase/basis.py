"""Finite truncation of the planar-rotor Hilbert space.

The infinite angular-momentum ladder {|m>} is represented by the window
m = -M..M (boson sector) or m = -M+1/2..M-1/2 (fermion sector).  Angle
wavefunctions live on uniform grids theta_j = -pi + 2*pi*j/N and are
synthesized as

    psi(theta_j) = <theta_j|psi> = (2*pi)**-0.5 * sum_m c_m exp(-i m theta_j),

the phase convention under which the angular-momentum operator acts as
+i d/d(theta) on smooth periodic wavefunctions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import AliasingError, ParameterDomainError, TruncationLeakError

BOSON = "boson"
FERMION = "fermion"

DEFAULT_LEAK_THRESHOLD = 1e-10

_NORM_TOL = 1e-12
_HERMITICITY_TOL = 1e-12
_TRACE_TOL = 1e-12
_EIGENVALUE_FLOOR = -1e-10


@dataclass(frozen=True)
class RotorSpace:
    """Truncated angular-momentum basis.

    Parameters
    ----------
    M : int
        Truncation half-width.  The boson sector keeps the 2M+1 integer
        labels -M..M; the fermion sector keeps the 2M half-integer labels
        -M+1/2..M-1/2.
    sector : str
        Either ``"boson"`` or ``"fermion"``.
    """

    M: int
    sector: str = BOSON

    def __post_init__(self):
        if self.M < 1:
            raise ParameterDomainError(f"M must be >= 1, got {self.M}")
        if self.sector not in (BOSON, FERMION):
            raise ParameterDomainError(f"unknown sector {self.sector!r}")

    @property
    def dim(self) -> int:
        return 2 * self.M + 1 if self.sector == BOSON else 2 * self.M

    @property
    def labels(self) -> np.ndarray:
        if self.sector == BOSON:
            return np.arange(-self.M, self.M + 1, dtype=float)
        return np.arange(-self.M, self.M, dtype=float) + 0.5

    def index_of(self, m: float) -> int:
        offset = m + self.M if self.sector == BOSON else m + self.M - 0.5
        idx = int(round(offset))
        if not (0 <= idx < self.dim) or abs(offset - idx) > 1e-9:
            raise ParameterDomainError(f"label {m} not in basis of {self}")
        return idx


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over the basis labels of ``space``."""

    space: RotorSpace
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.space.dim,):
            raise ParameterDomainError(
                f"amplitude vector of shape {amps.shape} does not match "
                f"dimension {self.space.dim}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ParameterDomainError(
                f"state norm {norm!r} deviates from 1 beyond {_NORM_TOL:g}"
            )
        object.__setattr__(self, "amplitudes", amps)

    def edge_mass(self) -> float:
        """Probability sitting on the outermost basis labels."""
        a = self.amplitudes
        return float(abs(a[0]) ** 2 + abs(a[-1]) ** 2)


def normalized_state(space: RotorSpace, raw_amplitudes: Sequence[complex] | np.ndarray) -> PureState:
    raw = np.asarray(raw_amplitudes, dtype=complex)
    norm = np.linalg.norm(raw)
    if norm == 0.0:
        raise ParameterDomainError("cannot normalize the zero vector")
    return PureState(space, raw / norm)


def basis_state(space: RotorSpace, m: float) -> PureState:
    amps = np.zeros(space.dim, dtype=complex)
    amps[space.index_of(m)] = 1.0
    return PureState(space, amps)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense matrix of an operator in the angular-momentum basis."""

    space: RotorSpace
    entries: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=complex)
        d = self.space.dim
        if mat.shape != (d, d):
            raise ParameterDomainError(
                f"matrix shape {mat.shape} does not match dimension {d}"
            )
        object.__setattr__(self, "entries", mat)

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.space, self.entries.conj().T)

    def is_hermitian(self, tol: float = _HERMITICITY_TOL) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol)


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite operator."""

    operator: OperatorMatrix

    def __post_init__(self):
        mat = self.operator.entries
        herm = float(np.max(np.abs(mat - mat.conj().T)))
        if herm > _HERMITICITY_TOL:
            raise ParameterDomainError(
                f"density matrix is non-Hermitian by {herm:.3e}"
            )
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > _TRACE_TOL:
            raise ParameterDomainError(f"density trace {trace} deviates from 1")
        eigs = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
        if float(np.min(eigs)) < _EIGENVALUE_FLOOR:
            raise ParameterDomainError(
                f"density matrix has eigenvalue {np.min(eigs):.3e} below "
                f"{_EIGENVALUE_FLOOR:g}"
            )

    @property
    def space(self) -> RotorSpace:
        return self.operator.space

    @property
    def entries(self) -> np.ndarray:
        return self.operator.entries


def pure_density(state: PureState) -> DensityOperator:
    mat = np.outer(state.amplitudes, state.amplitudes.conj())
    return DensityOperator(OperatorMatrix(state.space, mat))


def mixed_density(space: RotorSpace, weighted_states: Sequence[tuple[float, PureState]]) -> DensityOperator:
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    total = 0.0
    for weight, state in weighted_states:
        if weight < 0:
            raise ParameterDomainError("mixture weights must be nonnegative")
        mat += weight * np.outer(state.amplitudes, state.amplitudes.conj())
        total += weight
    if total <= 0:
        raise ParameterDomainError("mixture weights must not all vanish")
    return DensityOperator(OperatorMatrix(space, mat / total))


def diagonal_density(space: RotorSpace, weights: Sequence[float] | np.ndarray) -> DensityOperator:
    w = np.asarray(weights, dtype=float)
    if w.shape != (space.dim,):
        raise ParameterDomainError("weight vector does not match dimension")
    if np.any(w < 0):
        raise ParameterDomainError("diagonal weights must be nonnegative")
    return DensityOperator(OperatorMatrix(space, np.diag(w / np.sum(w)).astype(complex)))


# ---------------------------------------------------------------------------
# operators


def angular_momentum_op(space: RotorSpace) -> OperatorMatrix:
    """Diagonal matrix of J, i.e. J|m> = m|m>."""
    return OperatorMatrix(space, np.diag(space.labels).astype(complex))


def trig_theta_ops(space: RotorSpace) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Matrices of cos(Theta) and sin(Theta).

    cos couples neighboring labels with 1/2; sin with +-1/(2i), the sign
    fixed so that <m+1|sin|m> = 1/(2i).  Both are Hermitian; the operator
    identity cos^2 + sin^2 = 1 holds away from the truncation edge.
    """
    d = space.dim
    raise_one = np.eye(d, k=-1, dtype=complex)   # <m+1| . |m>
    lower_one = np.eye(d, k=+1, dtype=complex)   # <m-1| . |m>
    cos_op = 0.5 * (raise_one + lower_one)
    sin_op = (raise_one - lower_one) / 2j
    return OperatorMatrix(space, cos_op), OperatorMatrix(space, sin_op)


def exp_theta_matrix(space: RotorSpace, m_shift: int) -> OperatorMatrix:
    """Matrix of exp(i*m_shift*Theta): index shift with hard truncation."""
    if m_shift != int(m_shift):
        raise ParameterDomainError("shift must be an integer")
    return OperatorMatrix(space, np.eye(space.dim, k=-int(m_shift), dtype=complex))


def exp_j_matrix(space: RotorSpace, theta: float) -> OperatorMatrix:
    """Matrix of exp(-i*theta*J)."""
    return OperatorMatrix(space, np.diag(np.exp(-1j * theta * space.labels)))


# ---------------------------------------------------------------------------
# angle representation


def theta_grid(n: int) -> np.ndarray:
    """Uniform angle grid theta_j = -pi + 2*pi*j/n, j = 0..n-1."""
    if n < 1:
        raise ParameterDomainError("grid size must be positive")
    return -np.pi + 2.0 * np.pi * np.arange(n) / n


def angle_synthesize(state: PureState, grid: np.ndarray) -> np.ndarray:
    """Sample the angle wavefunction <theta_j|psi> on the given grid."""
    grid = np.asarray(grid, dtype=float)
    if grid.size < state.space.dim:
        raise AliasingError(
            f"grid of {grid.size} points cannot resolve {state.space.dim} modes"
        )
    phases = np.exp(-1j * np.outer(grid, state.space.labels))
    return (phases @ state.amplitudes) / np.sqrt(2.0 * np.pi)


def angle_analyze(space: RotorSpace, samples: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Recover amplitudes from angle samples; exact inverse of synthesis."""
    grid = np.asarray(grid, dtype=float)
    samples = np.asarray(samples, dtype=complex)
    if grid.shape != samples.shape:
        raise ParameterDomainError("grid and samples must have equal shape")
    if grid.size < space.dim:
        raise AliasingError("grid too coarse for this basis")
    phases = np.exp(1j * np.outer(space.labels, grid))
    return np.sqrt(2.0 * np.pi) * (phases @ samples) / grid.size


def apply_exp_j(state: PureState, theta: float) -> PureState:
    """Apply exp(-i*theta*J); multiplies c_m by exp(-i*theta*m)."""
    return PureState(state.space, np.exp(-1j * theta * state.space.labels) * state.amplitudes)


def apply_exp_theta(
    state: PureState,
    m_shift: int,
    leak_threshold: float = DEFAULT_LEAK_THRESHOLD,
) -> PureState:
    """Apply exp(i*m_shift*Theta); shifts amplitudes up by m_shift labels.

    Raises
    ------
    TruncationLeakError
        If the probability mass pushed past the truncation window exceeds
        ``leak_threshold``.
    """
    shift = int(m_shift)
    if shift != m_shift:
        raise ParameterDomainError("shift must be an integer")
    amps = state.amplitudes
    d = amps.size
    if abs(shift) >= d:
        raise TruncationLeakError(
            f"shift by {shift} moves all support outside the window", 1.0
        )
    shifted = np.zeros(d, dtype=complex)
    if shift >= 0:
        shifted[shift:] = amps[: d - shift]
    else:
        shifted[: d + shift] = amps[-shift:]
    leaked = float(1.0 - np.sum(np.abs(shifted) ** 2))
    if leaked > leak_threshold:
        raise TruncationLeakError(
            f"shift by {shift} pushes amplitude past the truncation window",
            leaked,
        )
    return normalized_state(state.space, shifted)


def derivative_check(state: PureState, grid: np.ndarray) -> float:
    """Residual of J acting as +i d/d(theta) in the angle representation.

    The left side synthesizes the amplitudes of J|psi>; the right side
    differentiates the sampled wavefunction spectrally, with no reference
    to the amplitudes of J|psi>.
    """
    grid = np.asarray(grid, dtype=float)
    n = grid.size
    j_samples = (
        np.exp(-1j * np.outer(grid, state.space.labels))
        @ (state.space.labels * state.amplitudes)
    ) / np.sqrt(2.0 * np.pi)

    samples = angle_synthesize(state, grid)
    modes = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    # Samples start at theta = -pi, so each FFT mode carries a (-1)^k phase.
    coeffs = np.fft.fft(samples) / n * np.power(-1.0, modes)
    d_coeffs = 1j * modes * coeffs
    d_samples = np.exp(1j * np.outer(grid, modes)) @ d_coeffs
    return float(np.max(np.abs(j_samples - 1j * d_samples)))


def angle_completeness_residual(space: RotorSpace, n: int) -> float:
    """Deviation of (2*pi/N) sum_j |theta_j><theta_j| from the identity."""
    if n < space.dim:
        raise AliasingError("need at least dim grid points for completeness")
    grid = theta_grid(n)
    phases = np.exp(1j * np.outer(space.labels, grid)) / np.sqrt(2.0 * np.pi)
    resolution = (2.0 * np.pi / n) * (phases @ phases.conj().T)
    return float(np.max(np.abs(resolution - np.eye(space.dim))))


# ---------------------------------------------------------------------------
# serialization


def state_to_json_dict(state: PureState) -> dict:
    return {
        "sector": state.space.sector,
        "M": state.space.M,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }


def state_from_json_dict(payload: dict) -> PureState:
    space = RotorSpace(M=int(payload["M"]), sector=payload["sector"])
    amps = np.array([complex(re, im) for re, im in payload["amplitudes"]])
    return PureState(space, amps)


def save_state(state: PureState, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_json_dict(state), fh, indent=1)


def load_state(path: str) -> PureState:
    with open(path, "r", encoding="utf-8") as fh:
        return state_from_json_dict(json.load(fh))


def density_to_json_dict(rho: DensityOperator) -> dict:
    return {
        "sector": rho.space.sector,
        "M": rho.space.M,
        "matrix": [
            [[float(v.real), float(v.imag)] for v in row] for row in rho.entries
        ],
    }


def density_from_json_dict(payload: dict) -> DensityOperator:
    space = RotorSpace(M=int(payload["M"]), sector=payload["sector"])
    mat = np.array(
        [[complex(re, im) for re, im in row] for row in payload["matrix"]]
    )
    return DensityOperator(OperatorMatrix(space, mat))


def save_density(rho: DensityOperator, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(density_to_json_dict(rho), fh, indent=1)


def load_density(path: str) -> DensityOperator:
    with open(path, "r", encoding="utf-8") as fh:
        return density_from_json_dict(json.load(fh))
