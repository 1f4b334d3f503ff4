"""Exception hierarchy shared across the package."""


class EisrankError(Exception):
    """Base class for all package errors."""


class ParameterError(EisrankError):
    """A precondition on (p, ell, k) or another argument is violated."""


class NotAUnitError(ParameterError):
    """A residue that must be invertible is divisible by the modulus."""


class UndefinedValuationError(ParameterError):
    """p-adic valuation of zero requested."""


class InvalidRingError(EisrankError):
    """Matrix ring tag does not match the requested operation."""


class NonSquareError(EisrankError):
    """A square matrix was required."""


class CommutativityError(EisrankError):
    """Generators handed to algebra_closure do not commute pairwise."""


class ResourceBoundExceeded(EisrankError):
    """k*(ell+1) exceeds the configured resource bound."""


class DimensionMismatchError(EisrankError):
    """Computed modular-symbol dimensions disagree with the classical
    dimension formula.  Always a bug, never a data condition."""


class IntegralityError(EisrankError):
    """An operator failed to preserve the integral lattice it must preserve."""


class HardFailure(EisrankError):
    """An internal consistency identity failed (stabilization, finite index,
    localization accounting).  Never raised on valid inputs."""


class HypothesesNotSatisfiedError(EisrankError):
    """predict() was called on a point that fails the hypothesis gate."""
