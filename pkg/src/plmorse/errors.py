"""Exception hierarchy.

Validation errors (bad input) and theorem contradictions (internal
assertions that should never fire on valid input) are kept apart so the
CLI can map them to different exit codes.
"""


class PLMorseError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(PLMorseError):
    """Input does not describe a valid surface or field."""


class MeshError(ValidationError):
    pass


class EmptyInput(MeshError):
    pass


class NonManifoldEdge(MeshError):
    pass


class NonManifoldVertex(MeshError):
    pass


class CurveNotSimple(MeshError):
    pass


class CurveTouchesVertex(MeshError):
    pass


class NotABoundaryCycle(MeshError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class FieldError(ValidationError):
    pass


class NonConstantBoundary(FieldError):
    pass


class CriticalOnBoundary(FieldError):
    pass


class EqualAdjacentInteriorValues(FieldError):
    pass


class NotAMoebiusBand(ValidationError):
    pass


class UnknownFixture(PLMorseError):
    pass


class TheoremViolation(PLMorseError):
    """A structural statement that must hold for valid input failed.

    Raised loudly: it means either a bug or a counterexample.
    """


class UnexpectedCutPattern(TheoremViolation):
    pass


class NotATree(TheoremViolation):
    pass


class LemmaViolated(TheoremViolation):
    pass


class PieceMismatch(TheoremViolation):
    pass


class EpsilonCollapse(TheoremViolation):
    pass


class GroupExprError(PLMorseError):
    pass


class NotAnnulusAtom(GroupExprError):
    pass


class BadPieceKind(GroupExprError):
    pass


class FreeActionViolation(TheoremViolation):
    pass


class InvariantCellViolation(TheoremViolation):
    pass
