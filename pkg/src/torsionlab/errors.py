"""Exception hierarchy shared by all torsionlab modules."""


class TorsionLabError(Exception):
    """Base class for all library errors."""


class DimensionError(TorsionLabError):
    """Operands have incompatible or unexpected dimensions."""


class SingularityError(TorsionLabError):
    """A matrix that must be invertible is singular."""


class ParameterError(TorsionLabError):
    """A constructor parameter violates its domain constraint."""


class RankError(TorsionLabError):
    """Vectors expected to be linearly independent are not."""


class StructureError(TorsionLabError):
    """Structured input (JSON table, equation system, CR data) is malformed."""


class AssignmentError(TorsionLabError):
    """An evaluation point does not cover every unknown."""


class OrbitError(TorsionLabError):
    """A vector does not lie on the requested orbit class."""


class IrrationalScaleError(TorsionLabError):
    """The requested normalization needs an irrational scale factor."""


class IntegrabilityError(TorsionLabError):
    """A map expected to be an integrable complex structure is not."""


class PreconditionError(TorsionLabError):
    """An operation's mathematical precondition does not hold."""


class SearchError(TorsionLabError):
    """A bounded search exhausted its grid without finding a witness."""
