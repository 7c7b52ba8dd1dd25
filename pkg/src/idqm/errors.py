"""Exception hierarchy shared by all idqm modules."""


class IdqmError(Exception):
    """Base class for all idqm errors."""


class DomainError(IdqmError):
    """Argument outside the domain of validity of the requested method."""


class QuadratureError(IdqmError):
    """Numerical quadrature could not meet the requested tolerance."""


class PoleError(IdqmError):
    """Evaluation requested too close to a pole of the function.

    Carries the lattice indices of the offending pole when known.
    """

    def __init__(self, message, n1=None, n2=None, location=None):
        super().__init__(message)
        self.n1 = n1
        self.n2 = n2
        self.location = location


class ContinuationOverflowError(IdqmError):
    """Functional-equation continuation factors left the representable range."""


class DivergenceError(IdqmError):
    """Series terms kept growing; no value can be reported."""


class ParamError(IdqmError):
    """A series denominator parameter vanished (or nearly so)."""


class ValidationError(IdqmError):
    """A constructor constraint was violated; message names the constraint."""


class SingularPointError(IdqmError):
    """A denominator determinant/Casoratian vanished within tolerance."""


class BranchError(IdqmError):
    """A square-root radicand crossed the cut between adjacent evaluations."""


class RangeError(IdqmError):
    """Index outside the admissible range (e.g. level above n_max)."""


class DegenerateError(IdqmError):
    """Connection-formula parameters are degenerate (lambda - mu on the shift lattice)."""


class InconclusiveError(IdqmError):
    """Neither side of an identity check stabilized numerically."""


class CutError(IdqmError):
    """Evaluation requested on or too close to a branch cut."""


class ConditioningWarning(UserWarning):
    """Determinant evaluation is ill-conditioned; result may lose digits."""
