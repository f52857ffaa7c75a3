"""Exception hierarchy.

Every error raised on user input derives from :class:`GrassFriezeError`, so
the CLI can map it to an exit code without catching unrelated bugs.
"""


class GrassFriezeError(Exception):
    """Base class for all library errors."""


class InputError(GrassFriezeError, ValueError):
    """Malformed or out-of-contract input."""


class BadShape(InputError):
    pass


class NotSquare(BadShape):
    pass


class ShapeMismatch(BadShape):
    pass


class SingularMatrix(InputError):
    pass


class NonPrimeModulus(InputError):
    pass


class NonCoprimeModuli(InputError):
    pass


class ZeroValue(InputError):
    pass


class ZeroColumn(InputError):
    pass


class NonPositive(InputError):
    pass


class SubsetTooSmall(InputError):
    pass


class InvalidTriangulation(InputError):
    pass


class UnknownSystem(InputError):
    pass


class InconsistentSpecialization(InputError):
    """The prescribed values violate a Pluecker relation."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class PreconditionViolated(InputError):
    pass


class ConditionsNotSatisfied(InputError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class RankDeficientWindow(InputError):
    pass


class NonTransitiveRelation(InputError):
    pass


class MissingFixture(InputError):
    pass


class ResourceLimit(GrassFriezeError):
    """A guard on problem size or search effort was hit."""


class InternalPostconditionFailure(GrassFriezeError, AssertionError):
    """A defensive round-trip check failed; this is a bug, not bad input."""


class ExtensionStalled(InternalPostconditionFailure):
    """No insertion could decrease the frozen product."""
