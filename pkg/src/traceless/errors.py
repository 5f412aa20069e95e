"""Exception types raised across the package.

Every domain failure derives from :class:`TracelessError`, which the CLI maps
to exit code 1.
"""


class TracelessError(Exception):
    """Base class for domain errors."""


class NotPureUnit(TracelessError):
    """A quaternion expected in C(i) is not pure or not of unit length."""


class PerturbationTooLarge(TracelessError):
    """eps * sup|f| reached pi/2, so the perturbed circle is no longer valid."""


class UnsupportedPerturbationFunction(TracelessError):
    """The unreduced circles are only defined for f = sin."""


class InvalidPerturbation(TracelessError):
    """f is not odd, 2pi-periodic, or vanishes away from multiples of pi."""


class InternalInconsistency(TracelessError):
    """An exact cross-check inside a computation failed."""


class NotCoprime(TracelessError):
    """Knot parameters must be coprime."""


class InvalidKnot(TracelessError):
    """Knot parameters outside the supported family."""


class OutOfDomain(TracelessError):
    """A point outside the square |x| <= 1, |y| <= 1."""


class NonTransverse(TracelessError):
    """Two paths meet tangentially or overlap."""


class CornerCrossing(TracelessError):
    """Two paths meet at a corner of the pillowcase (raised only on request)."""


class BranchAmbiguity(TracelessError):
    """The pillowcase image of a zero-set component could not be pinned down."""


class OracleMismatch(TracelessError):
    """Two independent computations of the same invariant disagree."""


class OutOfVerifiedRange(UserWarning):
    """A closed-form pattern was evaluated beyond its checked range."""
