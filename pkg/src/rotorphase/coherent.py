"""Theta-weighted coherent states on the cylinder and their overlaps.

The reference (vacuum) state carries Gaussian amplitudes

    c_m = exp(-pi*a*m^2) / sqrt(theta3(0 | 2i*a))        (boson sector)

with the theta2 normalizer replacing theta3 on half-integer labels.
Displacing it with D(m0, theta0) gives the coherent family; the overlap
of two members has the closed form

    <m',t'|m,t> = exp{-pi*a*D^2 + (i/2)[(m*t' - m'*t) + D*(t - t')]}
                  * theta3((t-t')/2 + i*pi*a*D | 2i*a) / theta3(0 | 2i*a)

with D = m - m'.  At a = 1/(2*pi) the Gaussian exponent reduces to
-D^2/2 and the theta argument's imaginary part to D/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import BOSON, FERMION, PureState, RotorSpace
from .displacement import wrap_angle
from .errors import ParameterDomainError, TruncationLeakError
from .theta import theta3_scaled

DEFAULT_WIDTH = 1.0 / (2.0 * math.pi)


@dataclass(frozen=True)
class WidthParam:
    """Positive width of the vacuum's Gaussian amplitude profile."""

    a: float

    def __post_init__(self):
        if not (self.a > 0.0):
            raise ParameterDomainError(f"width must be positive, got {self.a}")


def _width_value(a) -> float:
    value = a.a if isinstance(a, WidthParam) else float(a)
    if not (value > 0.0):
        raise ParameterDomainError(f"width must be positive, got {value}")
    return value


@dataclass(frozen=True)
class CoherentLabel:
    """Phase-space label (m0, theta0) plus the family width."""

    m0: int
    theta0: float
    a: float = DEFAULT_WIDTH

    def __post_init__(self):
        object.__setattr__(self, "theta0", wrap_angle(self.theta0))
        _width_value(self.a)

    def to_json_dict(self) -> dict:
        return {
            "kind": "coherent",
            "m0": self.m0,
            "theta0": self.theta0,
            "a": self.a,
        }

    @staticmethod
    def from_json_dict(payload: dict) -> "CoherentLabel":
        if payload.get("kind") != "coherent":
            raise ParameterDomainError("payload is not a coherent label")
        return CoherentLabel(
            m0=int(payload["m0"]),
            theta0=float(payload["theta0"]),
            a=float(payload["a"]),
        )


def default_truncation(a, tol: float = 1e-12, margin: int = 2) -> int:
    """Basis half-width keeping vacuum tails exp(-pi*a*M^2) below tol."""
    width = _width_value(a)
    return math.ceil(math.sqrt(math.log(1.0 / tol) / (math.pi * width))) + margin


def log_normalizer(space_sector: str, a) -> float:
    """log of theta3(0|2ia) (boson) or theta2(0|2ia) (fermion)."""
    width = _width_value(a)
    if space_sector == BOSON:
        mantissa, scale = theta3_scaled(0.0, 2.0 * width)
    elif space_sector == FERMION:
        # theta2(0|2ia) = sum over half-integers of exp(-2*pi*a*h^2)
        order = max(1, default_truncation(width, tol=1e-16, margin=1))
        half = np.arange(-order, order) + 0.5
        return float(np.log(np.sum(np.exp(-2.0 * math.pi * width * half * half))))
    else:
        raise ParameterDomainError(f"unknown sector {space_sector!r}")
    return float(np.log(mantissa.real) + scale)


def _gaussian_profile(space: RotorSpace, a: float, center: float) -> np.ndarray:
    # Amplitudes of the infinite-normalizer vacuum displaced to `center`,
    # clipped to the window without renormalization.
    offsets = space.labels - center
    return np.exp(
        -math.pi * a * offsets * offsets - 0.5 * log_normalizer(space.sector, a)
    ).astype(complex)


def vacuum(
    space: RotorSpace, a=DEFAULT_WIDTH, leak_threshold: float = 1e-10
) -> PureState:
    """Reference state with theta-function amplitude profile.

    Raises
    ------
    TruncationLeakError
        When the window edge amplitude exp(-pi*a*M^2) is not below
        ``leak_threshold``; enlarge M (see ``default_truncation``).
    """
    width = _width_value(a)
    edge = math.exp(-math.pi * width * float(np.max(np.abs(space.labels))) ** 2)
    if edge > leak_threshold:
        raise TruncationLeakError(
            f"M = {space.M} too small for width a = {width:.6g}", edge**2
        )
    profile = _gaussian_profile(space, width, 0.0)
    # The theta normalizer is exact only on the infinite ladder; dividing
    # by the clipped norm (1 minus a Gaussian tail) restores unit norm.
    return PureState(space, profile / np.linalg.norm(profile))


def coherent_amplitudes(space: RotorSpace, label: CoherentLabel) -> np.ndarray:
    """Amplitude vector of D(m0, theta0)|vacuum> without leak validation.

    The infinite-family normalizer is used and the profile is clipped to
    the window, which is exactly what pairing against window-supported
    operators requires; no renormalization is applied.
    """
    width = _width_value(label.a)
    profile = _gaussian_profile(space, width, float(label.m0))
    phases = np.exp(
        -0.5j * label.m0 * label.theta0
        - 1j * label.theta0 * (space.labels - label.m0)
    )
    return profile * phases


def coherent_state(
    space: RotorSpace, label: CoherentLabel, leak_threshold: float = 1e-10
) -> PureState:
    """Normalized coherent state |m0, theta0>.

    Raises
    ------
    TruncationLeakError
        When the clipped profile misses more than ``leak_threshold`` of
        the state's probability mass.
    """
    amps = coherent_amplitudes(space, label)
    leaked = float(1.0 - np.sum(np.abs(amps) ** 2))
    if leaked > leak_threshold:
        raise TruncationLeakError(
            f"coherent label {label} does not fit in M = {space.M}", leaked
        )
    return PureState(space, amps / np.linalg.norm(amps))


def overlap_closed_form(a, lhs: CoherentLabel, rhs: CoherentLabel) -> complex:
    """Scalar product <lhs|rhs> of two equal-width coherent states.

    Evaluated through the theta-function closed form; the brute-force
    amplitude contraction is kept as an independent oracle in the tests.
    """
    width = _width_value(a)
    for lab in (lhs, rhs):
        if abs(_width_value(lab.a) - width) > 1e-15:
            raise ParameterDomainError("labels must share the width parameter")
    m_p, t_p = lhs.m0, lhs.theta0
    m, t = rhs.m0, rhs.theta0
    delta = m - m_p
    dtheta = t - t_p
    mantissa, scale = theta3_scaled(
        0.5 * dtheta + 1j * math.pi * width * delta, 2.0 * width
    )
    log_norm = log_normalizer(BOSON, width)
    gauss = -math.pi * width * delta * delta
    phase = 0.5j * ((m * t_p - m_p * t) + delta * dtheta)
    return complex(np.exp(gauss + phase + scale - log_norm) * mantissa)


def overlap_kernel(a, l, alpha):
    """Vacuum-displacement overlap <0,0|l,alpha>, vectorized over alpha.

    Real-valued on the boson sector: the symmetric Gaussian amplitudes
    pair the series into cosines.  Zeros sit exactly at odd l,
    alpha = +-pi, for every width.
    """
    width = _width_value(a)
    alpha_arr = np.asarray(alpha, dtype=float)
    scalar = alpha_arr.ndim == 0
    alpha_arr = np.atleast_1d(alpha_arr)
    l = int(l)
    log_norm = log_normalizer(BOSON, width)
    gauss = -math.pi * width * l * l

    # theta3(alpha/2 + i*pi*a*l | 2i*a) as an explicit cosine-paired sum:
    # sum_n w_n exp(i*n*alpha) with w_n = exp(-2*pi*a*(n^2 + n*l)), peak
    # factored out to stay inside double range for large |l|.
    order = default_truncation(width, tol=1e-18, margin=2) + abs(l)
    n = np.arange(-order, order + 1)
    log_w = -2.0 * math.pi * width * (n * n + n * l)
    peak = float(np.max(log_w))
    series = np.exp(log_w - peak)[None, :] * np.exp(1j * np.outer(alpha_arr, n))
    theta_row = np.sum(series, axis=1)

    values = (
        np.exp(0.5j * l * alpha_arr)
        * theta_row
        * math.exp(gauss + peak - log_norm)
    )
    return complex(values[0]) if scalar else values


def completeness_residual(
    space: RotorSpace,
    a,
    m_window: int,
    n_theta: int,
    margin: int = 0,
) -> float:
    """Deviation of the coherent-state resolution of unity from identity.

    Builds sum over |m0| <= m_window of the theta-grid average of
    |m0,theta><m0,theta| and reports the largest deviation from the
    identity over the interior block |m| <= M - margin.  An undersized
    grid (n_theta < dim) is deliberately allowed; it shows up as an O(1)
    aliasing residual rather than an error.
    """
    from .basis import theta_grid

    width = _width_value(a)
    grid = theta_grid(n_theta)
    labels = space.labels
    accumulated = np.zeros((space.dim, space.dim), dtype=complex)
    for m0 in range(-m_window, m_window + 1):
        # Column j holds the amplitudes of |m0, theta_j>: the combined
        # phase is exp(-i*theta_j*(m1 - m0/2)).
        profile = _gaussian_profile(space, width, float(m0))
        amps = profile[:, None] * np.exp(-1j * np.outer(labels - 0.5 * m0, grid))
        accumulated += (amps @ amps.conj().T) / n_theta
    residual = accumulated - np.eye(space.dim)
    keep = np.abs(space.labels) <= space.M - margin
    return float(np.max(np.abs(residual[np.ix_(keep, keep)])))
