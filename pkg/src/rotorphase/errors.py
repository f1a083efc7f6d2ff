"""Exception and warning types shared across the package."""


class RotorPhaseError(Exception):
    """Base class for all rotorphase errors."""


class ParameterDomainError(RotorPhaseError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class OverflowRiskError(RotorPhaseError, ValueError):
    """A theta-series argument would drive term magnitudes toward overflow."""


class TruncationLeakError(RotorPhaseError, ValueError):
    """Probability mass would leave the finite angular-momentum window.

    Carries the measured leaked mass so callers can decide whether to
    enlarge the basis.
    """

    def __init__(self, message: str, leaked_mass: float):
        super().__init__(f"{message} (leaked mass {leaked_mass:.3e})")
        self.leaked_mass = leaked_mass


class AliasingError(RotorPhaseError, ValueError):
    """A sampling grid is too coarse to resolve the requested content."""


class ConvergenceError(RotorPhaseError, RuntimeError):
    """A truncated sum shows growing terms instead of converging."""


class HierarchyDirectionError(RotorPhaseError, ValueError):
    """Smoothing was requested against the allowed ordering direction."""


class DegenerateUncertaintyError(RotorPhaseError, ZeroDivisionError):
    """The uncertainty-product denominator vanished."""


class SingularKernelWarning(UserWarning):
    """A negative kernel power is being evaluated next to a kernel zero."""
