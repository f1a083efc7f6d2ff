"""Angle-angular-momentum uncertainty diagnostics for coherent states.

The periodic pair (J, Theta) admits the non-symmetric relation

    <dJ>^2 <d sin(Theta)>^2  >=  (1/4) <cos(Theta)>^2,

whose relative slack

    delta_U(theta) = (lhs - rhs) / lhs  in [0, 1]

vanishes exactly where the coherent family is minimum-uncertainty.  Both
sides depend on the angle label only; the angular-momentum label drops
out.  All moments are exact truncated-basis expectations built from the
rotor operator matrices.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

import numpy as np

from .basis import PureState, RotorSpace, angular_momentum_op, trig_theta_ops
from .coherent import (
    CoherentLabel,
    _width_value,
    coherent_state,
    default_truncation,
)
from .errors import DegenerateUncertaintyError, ParameterDomainError

THREADS_ENV_VAR = "ROTORPHASE_THREADS"


@dataclass(frozen=True)
class MomentSet:
    """First and second moments entering the uncertainty product."""

    mean_J: float
    mean_J2: float
    mean_sin: float
    mean_sin2: float
    mean_cos: float

    def variance_J(self) -> float:
        return self.mean_J2 - self.mean_J**2

    def variance_sin(self) -> float:
        return self.mean_sin2 - self.mean_sin**2


class _MomentMatrices:
    """Operator matrices reused across a theta scan."""

    def __init__(self, space: RotorSpace):
        j_op = angular_momentum_op(space).entries
        cos_op, sin_op = (op.entries for op in trig_theta_ops(space))
        self.j = j_op
        self.j2 = j_op @ j_op
        self.cos = cos_op
        self.sin = sin_op
        self.sin2 = sin_op @ sin_op

    def moments(self, state: PureState) -> MomentSet:
        amps = state.amplitudes

        def expect(mat):
            return float(np.real(np.vdot(amps, mat @ amps)))

        return MomentSet(
            mean_J=expect(self.j),
            mean_J2=expect(self.j2),
            mean_sin=expect(self.sin),
            mean_sin2=expect(self.sin2),
            mean_cos=expect(self.cos),
        )


def moments(state: PureState) -> MomentSet:
    """Exact truncated-basis moments of J, J^2, sin, sin^2, cos."""
    if state.space.sector != "boson":
        raise ParameterDomainError("moment diagnostics expect the boson sector")
    return _MomentMatrices(state.space).moments(state)


def _scan_space(a, extra_labels: int = 0) -> RotorSpace:
    return RotorSpace(default_truncation(a, tol=1e-14, margin=3) + extra_labels)


def uncertainty_sides(a, label: CoherentLabel) -> tuple[float, float]:
    """Both sides of the product inequality on a coherent state."""
    width = _width_value(a)
    space = _scan_space(width, extra_labels=abs(label.m0))
    state = coherent_state(space, label)
    mom = moments(state)
    lhs = mom.variance_J() * mom.variance_sin()
    rhs = 0.25 * mom.mean_cos**2
    return lhs, rhs


def delta_U(a, theta: float) -> float:
    """Relative slack of the inequality at angle label theta, in [0, 1]."""
    lhs, rhs = uncertainty_sides(a, CoherentLabel(0, theta, _width_value(a)))
    if lhs <= 0.0:
        raise DegenerateUncertaintyError(
            "uncertainty product vanished; slack undefined"
        )
    return (lhs - rhs) / lhs


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def scan_delta_U(a, n_theta: int) -> np.ndarray:
    """delta_U over the uniform angle grid; returns rows (theta, delta_U).

    Matrices are built once per width.  With ROTORPHASE_THREADS > 1 the
    grid is evaluated by a thread pool in deterministic chunk order.
    """
    width = _width_value(a)
    if n_theta < 2:
        raise ParameterDomainError("scan needs at least 2 grid points")
    space = _scan_space(width)
    mats = _MomentMatrices(space)
    thetas = -np.pi + 2.0 * np.pi * np.arange(n_theta) / n_theta

    def at(theta: float) -> float:
        state = coherent_state(space, CoherentLabel(0, float(theta), width))
        mom = mats.moments(state)
        lhs = mom.variance_J() * mom.variance_sin()
        rhs = 0.25 * mom.mean_cos**2
        if lhs <= 0.0:
            raise DegenerateUncertaintyError(
                f"uncertainty product vanished at theta = {theta}"
            )
        return (lhs - rhs) / lhs

    workers = _thread_count()
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(at, thetas))
    else:
        values = [at(t) for t in thetas]
    return np.column_stack([thetas, values])


def save_scan(rows: np.ndarray, a, space_M: int, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# a={_width_value(a):.17g}  M={space_M}\n")
        fh.write("theta,delta_U\n")
        writer = csv.writer(fh)
        for theta, value in rows:
            writer.writerow([f"{theta:.17g}", f"{value:.17g}"])


def save_scan_json(rows: np.ndarray, a, space_M: int, path: str) -> None:
    import json

    payload = {
        "a": _width_value(a),
        "M": int(space_M),
        "rows": [[float(t), float(v)] for t, v in rows],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)


def scan_space_M(a) -> int:
    """Truncation used by ``scan_delta_U`` for this width (for headers)."""
    return _scan_space(_width_value(a)).M
