"""Exception hierarchy.

Guard errors signal precondition violations (CLI exit code 2), input errors
signal malformed map files (exit code 3), and computation errors signal
verification or convergence failures (exit code 1).
"""


class BottcherError(Exception):
    """Base class for all library errors."""


class InputError(BottcherError):
    """Malformed map description or file."""


class GuardError(BottcherError):
    """A documented precondition does not hold for the given input."""


class NonIntegralExponent(GuardError):
    """An exponent substitution produced a fractional exponent.

    Signals that a branched covering is not well-defined at this weight.
    """


class WeightOutsideInterval(GuardError):
    """A covering weight lies outside the admissible interval."""


class DivisibilityFailure(GuardError):
    """The divisibility needed for a w-direction covering fails."""


class BranchDomainError(BottcherError):
    """A unit factor left the disk |u - 1| < 1; principal log invalid."""


class DivisionNearZero(BottcherError):
    """The dominant monomial vanishes or underflows at the given point."""


class NoConvergence(BottcherError):
    """Iteration budget exhausted without meeting the tolerance."""


class NoContraction(BottcherError):
    """An orbit fails to contract toward the fixed point."""


class EmptyBand(BottcherError):
    """Sampling band is empty or numerically degenerate."""


class EmptyRegion(BottcherError):
    """A shrunken region has crossed bounds at the representative radius."""


class InclusionViolation(BottcherError):
    """A sampled inclusion check failed; carries a witness point."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
