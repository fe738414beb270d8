"""Exception hierarchy shared by every module."""


class GaloisError(Exception):
    """Base class for all errors raised by galoiscat."""


class LawViolation(GaloisError):
    """A table failed one of the group/monoid laws."""

    def __init__(self, law, witness, message=None):
        self.law = law
        self.witness = tuple(witness)
        super().__init__(message or f"{law} at {self.witness}")


class NonAssociative(LawViolation):
    def __init__(self, i, j, k):
        super().__init__("NonAssociative", (i, j, k))


class BadIdentity(LawViolation):
    def __init__(self, i):
        super().__init__("BadIdentity", (i,))


class BadInverse(LawViolation):
    def __init__(self, i):
        super().__init__("BadInverse", (i,))


class TableShapeError(GaloisError):
    pass


class SizeCapExceeded(GaloisError):
    def __init__(self, what, size, cap):
        self.what, self.size, self.cap = what, size, cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class NotASubgroup(GaloisError):
    pass


class NotAHomomorphism(GaloisError):
    pass


class MonoidActorUnsupported(GaloisError):
    pass


class PointOutOfRange(GaloisError):
    pass


class ActorMismatch(GaloisError):
    pass


class NotByAutomorphisms(GaloisError):
    pass


class InvalidAction(GaloisError):
    pass


class CategoryError(GaloisError):
    """Malformed category data (bad composition, non-functorial fiber...)."""


class ArrowNotInCategory(CategoryError):
    pass


class NoImageObject(CategoryError):
    def __init__(self, arrow, message=None):
        self.arrow = arrow
        super().__init__(message or f"no strict epi / mono factorization of arrow {arrow}")


class AxiomPrereqFailed(GaloisError):
    def __init__(self, suite, axiom=None, detail=""):
        self.suite, self.axiom, self.detail = suite, axiom, detail
        tag = f"{suite}:{axiom}" if axiom else suite
        super().__init__(f"axiom prerequisite failed ({tag}) {detail}".rstrip())


class NoMeet(GaloisError):
    pass


class NotGalois(GaloisError):
    pass


class InvalidInverseSystem(GaloisError):
    pass


class QuotientMissing(GaloisError):
    pass


class CoproductMissing(GaloisError):
    pass


class SuiteFailed(GaloisError):
    """An axiom suite required by an equivalence theorem did not pass."""

    def __init__(self, suite, axiom, report=None):
        self.suite, self.axiom, self.report = suite, axiom, report
        super().__init__(f"{suite}Failed({axiom})")


class Disconnected(GaloisError):
    pass


class ParseError(GaloisError):
    def __init__(self, message, line=0, column=0, path=None):
        self.line, self.column, self.path = line, column, path
        where = f"{path or '<input>'}:{line}:{column}"
        super().__init__(f"{where}: {message}")
