"""Quasiprobability distributions on the angle-angular-momentum cylinder.

A numpy library for theta-function coherent states on the circle, the
s-ordered mapping-kernel family built on them, the Husimi / Wigner /
Glauber-Sudarshan distributions with their smoothing hierarchy, and the
periodic uncertainty-relation diagnostics.
"""

from .basis import (
    BOSON,
    FERMION,
    DensityOperator,
    OperatorMatrix,
    PureState,
    RotorSpace,
    angle_analyze,
    angle_completeness_residual,
    angle_synthesize,
    angular_momentum_op,
    apply_exp_j,
    apply_exp_theta,
    basis_state,
    derivative_check,
    diagonal_density,
    load_density,
    load_state,
    mixed_density,
    normalized_state,
    pure_density,
    save_density,
    save_state,
    theta_grid,
    trig_theta_ops,
)
from .coherent import (
    CoherentLabel,
    WidthParam,
    coherent_state,
    completeness_residual,
    default_truncation,
    overlap_closed_form,
    overlap_kernel,
    vacuum,
)
from .displacement import (
    DisplacementLabel,
    compose_labels,
    displacement_matrix,
    hs_inner,
    wrap_angle,
)
from .errors import (
    AliasingError,
    ConvergenceError,
    DegenerateUncertaintyError,
    HierarchyDirectionError,
    OverflowRiskError,
    ParameterDomainError,
    RotorPhaseError,
    SingularKernelWarning,
    TruncationLeakError,
)
from .mapping import (
    Distribution,
    KernelTable,
    PhaseGrid,
    SParameter,
    build_kernel_table,
    characteristic_function,
    expectation_table,
    expectation_via_phase_space,
    full_period_grid,
    kernel_matrix,
    load_distribution,
    map_operator,
    pair_trace,
    reconstruct_operator,
    save_distribution,
    windowed_grid,
)
from .quasiprob import (
    distribution_summary,
    glauber_sudarshan,
    husimi,
    husimi_from_glauber,
    smooth,
    smoothing_kernel,
    wigner,
)
from .theta import ThetaArg, theta2, theta3, theta3_scaled, truncation_order
from .uncertainty import MomentSet, delta_U, moments, scan_delta_U, uncertainty_sides

__version__ = "0.1.0"
