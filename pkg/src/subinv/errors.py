"""Exception types shared across the package."""


class SubinvError(Exception):
    """Base class for all package-specific errors."""


class EmptyInput(SubinvError):
    pass


class DimOutOfRange(SubinvError):
    pass


class SimplexNotFound(SubinvError):
    pass


class InvalidSubdivision(SubinvError):
    pass


class OrientationConflict(InvalidSubdivision):
    """Party sign propagation is inconsistent; the input is not a subdivision."""


class DisconnectedParty(InvalidSubdivision):
    """A party's member adjacency graph is disconnected."""


class ComplexMismatch(SubinvError):
    pass


class MetricNotPD(SubinvError):
    pass


class ConstructionFailed(SubinvError):
    """A combinatorial basis construction could not be completed."""


class DependentHyperplanes(SubinvError):
    """Constraint gradients came out linearly dependent; signals an upstream bug."""


class ModeUnsupported(SubinvError):
    pass


class ZeroPolynomial(SubinvError):
    """A determinant polynomial vanished identically (degenerate pencil)."""


class NoLift(SubinvError):
    """A candidate stationary value admits no witness on the ellipsoid."""


class Disagreement(SubinvError):
    """Independent computation routes disagree beyond tolerance; hard failure."""


class IneligibleSimplex(SubinvError):
    pass


class BadDescriptor(SubinvError):
    pass
