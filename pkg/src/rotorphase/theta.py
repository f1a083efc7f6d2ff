"""Jacobi theta-function evaluation with certified series truncation.

Only the purely imaginary second parameter tau = i*tau_im is supported;
every use in this package has that form.  The series

    theta3(z | i t) = sum_l exp(-pi t l^2) exp(2 i l z)
    theta2(z | i t) = sum_l exp(-pi t (l+1/2)^2) exp(2 i (l+1/2) z)

is summed directly over l = -L..L with L chosen from a Gaussian-integral
tail bound, so the neglected remainder is provably below the requested
tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OverflowRiskError, ParameterDomainError

# Public theta evaluation refuses |Im z| beyond this multiple of tau_im;
# past it, individual terms grow large before cancellation sets in.
IMAG_CAP_FACTOR = 50.0

# Largest tolerance a caller may request (looser values defeat the point
# of a certified evaluation).
MAX_TOL = 1e-6

# Refuse series whose peak term exceeds exp(_MAX_PEAK_LOG).
_MAX_PEAK_LOG = 600.0


@dataclass(frozen=True)
class ThetaArg:
    """Argument pair (z, tau_im) standing for theta(z | i*tau_im).

    Parameters
    ----------
    z : complex
        First argument, radians scale.
    tau_im : float
        Imaginary part of the second parameter; must be positive for the
        series to converge.
    """

    z: complex
    tau_im: float

    def __post_init__(self):
        if not (self.tau_im > 0.0):
            raise ParameterDomainError(
                f"tau_im must be positive, got {self.tau_im}"
            )
        im = abs(complex(self.z).imag)
        if im > IMAG_CAP_FACTOR * self.tau_im:
            raise OverflowRiskError(
                f"|Im z| = {im:.6g} exceeds the cap "
                f"{IMAG_CAP_FACTOR:g}*tau_im = {IMAG_CAP_FACTOR * self.tau_im:.6g}"
            )
        if im * im / (math.pi * self.tau_im) > _MAX_PEAK_LOG:
            raise OverflowRiskError(
                f"peak term exp({im * im / (math.pi * self.tau_im):.1f}) "
                "would overflow double precision"
            )


def _log_erfc(x: float) -> float:
    # math.erfc underflows near x = 26.6; switch to the asymptotic bound
    # erfc(x) < exp(-x^2)/(x sqrt(pi)), which over-estimates and therefore
    # keeps the truncation bound conservative.
    if x <= 0.0:
        return math.log(math.erfc(x))
    if x < 25.0:
        return math.log(math.erfc(x))
    return -x * x - math.log(x * math.sqrt(math.pi))


def _tail_log_bound(order: int, tau_im: float, im_z: float) -> float:
    # log of  exp(c^2/(pi t)) * sqrt(1/t) * erfc(sqrt(pi t) (L - mu)),
    # an upper bound for both tails of the series with |Im z| = c, valid
    # once L sits past the peak index mu = c/(pi t).
    c = abs(im_z)
    mu = c / (math.pi * tau_im)
    if order < mu:
        return math.inf
    x = math.sqrt(math.pi * tau_im) * (order - mu)
    return (
        c * c / (math.pi * tau_im)
        - 0.5 * math.log(tau_im)
        + _log_erfc(x)
    )


def _series_order(tau_im: float, im_z: float, tol: float) -> int:
    log_tol = math.log(tol)
    order = max(0, math.ceil(abs(im_z) / (math.pi * tau_im)))
    while _tail_log_bound(order, tau_im, im_z) >= log_tol:
        order += 1
        if order > 1_000_000:
            raise ParameterDomainError(
                "truncation order exceeds 1e6; tolerance unreachable"
            )
    return order


def truncation_order(tau_im: float, tol: float) -> int:
    """Smallest L whose certified tail bound for sum exp(-pi*tau_im*l^2)
    over |l| > L lies below tol.

    The bound is the Gaussian-integral (erfc) envelope of the discrete
    tail, so the returned order can exceed the minimal one by a step.
    """
    if not (tau_im > 0.0):
        raise ParameterDomainError(f"tau_im must be positive, got {tau_im}")
    if not (tol > 0.0):
        raise ParameterDomainError(f"tol must be positive, got {tol}")
    return _series_order(tau_im, 0.0, tol)


def _check_tol(tol: float) -> None:
    if not (0.0 < tol <= MAX_TOL):
        raise ParameterDomainError(
            f"tol must lie in (0, {MAX_TOL:g}], got {tol}"
        )


def theta3(arg: ThetaArg, tol: float = 1e-12) -> complex:
    """Evaluate theta3(z | i*tau_im) with neglected tail below tol."""
    _check_tol(tol)
    z = complex(arg.z)
    order = _series_order(arg.tau_im, z.imag, tol)
    l = np.arange(-order, order + 1)
    terms = np.exp(-math.pi * arg.tau_im * l * l + 2j * l * z)
    return complex(np.sum(terms))


def theta2(arg: ThetaArg, tol: float = 1e-12) -> complex:
    """Evaluate theta2(z | i*tau_im) with neglected tail below tol."""
    _check_tol(tol)
    z = complex(arg.z)
    # Half-integer indices decay at least as fast as the integer ones,
    # so the theta3 order certificate also covers this series.
    order = _series_order(arg.tau_im, z.imag, tol)
    half = np.arange(-order, order + 1) + 0.5
    terms = np.exp(-math.pi * arg.tau_im * half * half + 2j * half * z)
    return complex(np.sum(terms))


def theta3_scaled(z: complex, tau_im: float, tol: float = 1e-14):
    """Evaluate theta3 as (mantissa, log_scale) with theta3 = mantissa*exp(log_scale).

    Internal-facing variant without the |Im z| cap: the peak term is
    factored out analytically, so arbitrarily displaced arguments (as
    produced by widely separated angular-momentum labels) stay inside
    double range.  Used by the overlap and kernel machinery.
    """
    if not (tau_im > 0.0):
        raise ParameterDomainError(f"tau_im must be positive, got {tau_im}")
    z = complex(z)
    order = _series_order(tau_im, z.imag, tol)
    l = np.arange(-order, order + 1)
    log_mag = -math.pi * tau_im * l * l - 2.0 * l * z.imag
    peak = float(np.max(log_mag))
    terms = np.exp(log_mag - peak + 2j * l * z.real)
    return complex(np.sum(terms)), peak
