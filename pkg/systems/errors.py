"""Exception types raised by the bottbord systems.

Every error is a ``ValueError`` so callers that only care about "bad input" can keep
catching that; the CLI maps any ``BottbordError`` to exit code 2.
"""


class BottbordError(ValueError):
    """Base class for all domain errors."""


# Polytope
class EmptyDims(BottbordError):
    pass


class NonPositiveDim(BottbordError):
    pass


class InvalidVertex(BottbordError):
    pass


# Characteristic matrix
class ShapeMismatch(BottbordError):
    pass


class DiagonalNotOne(BottbordError):
    pass


class EntryOutOfRange(BottbordError):
    pass


class NotCharacteristic(BottbordError):
    """The matrix fails the unimodularity condition at some vertex."""


class NotTriangularizable(BottbordError):
    pass


class TooManyFactors(BottbordError):
    pass


class NotACube(BottbordError):
    pass


class ReducedNotCharacteristic(BottbordError):
    pass


# Ring and classes
class ModeMismatch(BottbordError):
    pass


class DegreeOutOfRange(BottbordError):
    pass


class NotTopDegree(BottbordError):
    pass


class NonUnitNormalization(BottbordError):
    """The vertex class does not normalize the top degree; the ring is inconsistent."""


class NonIntegralPairing(BottbordError):
    pass


class BadL(BottbordError):
    pass


class OddDegree(BottbordError):
    pass


# Verification, enumeration, CLI
class UnknownTheorem(BottbordError):
    pass


class BadParams(BottbordError):
    pass


class InfeasibleSpec(BottbordError):
    pass


class IoFailure(BottbordError):
    pass


class UsageError(BottbordError):
    pass
