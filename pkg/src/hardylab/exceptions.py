"""Exception hierarchy shared across the package.

Distinguishing argument errors from numerical failures lets callers react
differently: bad parameters are caller bugs, numeric errors are resolution
or conditioning problems, and ``NoSecondSolution`` is a legitimate verdict
of the mountain-pass search rather than a failure.
"""


class HardyLabError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(HardyLabError, ValueError):
    """A constructor or operation received out-of-contract parameters."""


class DomainError(HardyLabError, ValueError):
    """A point evaluation was requested outside the admissible domain."""


class InvalidInputError(HardyLabError, ValueError):
    """Input data (right-hand sides, profiles, test functions) violate
    a documented precondition."""


class NumericError(HardyLabError, RuntimeError):
    """An iterative procedure failed to converge or produced non-finite
    values where finite ones are guaranteed."""


class UnsupportedRegimeError(HardyLabError, ValueError):
    """The requested operation is undefined in this parameter regime
    (typically a supercritical source exponent)."""


class InsufficientResolutionError(HardyLabError, ValueError):
    """The grid does not resolve the feature the operation needs."""


class InconsistencyError(HardyLabError, RuntimeError):
    """Observed data contradicts a structural guarantee (for instance a
    non-monotone convergence predicate across a bisection bracket).

    Carries the contradicting witnesses when available.
    """

    def __init__(self, message, witnesses=None):
        super().__init__(message)
        self.witnesses = witnesses


class NoSecondSolution(HardyLabError):
    """The mountain-pass deformation collapsed below the energy barrier:
    no second solution was found above the supplied minimal profile."""

    def __init__(self, message, beta=None, max_energy=None):
        super().__init__(message)
        self.beta = beta
        self.max_energy = max_energy
