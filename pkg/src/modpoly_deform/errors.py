"""Exception hierarchy shared by every layer of the package."""


class ModPolyError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(ModPolyError, ValueError):
    """Operands do not fit together (field, precision or shape mismatch)."""


class NotAUnit(ModPolyError, ArithmeticError):
    """Attempted to invert a ring element with zero constant term."""


class SingularJacobian(ModPolyError, ArithmeticError):
    """Newton iteration started at a root where the derivative vanishes mod eps."""


class ExcludedJInvariant(ModPolyError):
    """A j-invariant equal to 0 or 1728 showed up where it is not allowed."""


class SamplingFailure(ModPolyError):
    """Random sampling did not produce what was needed within the budget."""

    def __init__(self, message, seed=None):
        super().__init__(message if seed is None else f"{message} (seed={seed})")
        self.seed = seed


class InseparableTorsion(ModPolyError):
    """Requested N-torsion where the characteristic divides N."""


class WouldSplit(ModPolyError):
    """A gluing kernel whose quotient is again a product of elliptic curves."""


class NotSplit(ModPolyError):
    """Tried to split a surface that is not isomorphic to a product."""


class NotIsotropic(ModPolyError):
    """A kernel candidate is not isotropic for the Weil pairing."""


class PrematureSplit(ModPolyError):
    """A (2,2)-chain reached a product before its last step."""


class DegenerateDivisor(ModPolyError):
    """A divisor hit a special position; retry with a different representative."""


class DegenerateSecant(ModPolyError):
    """The secant denominator vanished to higher order than expected."""


class ConvergenceFailure(ModPolyError):
    """A lifting loop finished without certifying its result."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class NoParameters(ModPolyError):
    """No admissible diamond exponent below the hard cap."""


class CoefficientNotRational(ModPolyError):
    """A modular polynomial coefficient did not descend to the prime field."""


class InternalInconsistency(ModPolyError):
    """A validation check on a final result failed."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class FixtureError(ModPolyError):
    """A reference table is missing or does not match its checksum."""


class PrimeSkipped(ModPolyError):
    """The per-prime pipeline gave up on this prime; the caller picks another."""

    def __init__(self, p, reason):
        super().__init__(f"prime {p} skipped: {reason}")
        self.p = p
        self.reason = reason
