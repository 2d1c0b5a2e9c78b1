"""Exception hierarchy.  Every domain error derives from MatroidError so the
CLI can map it to exit code 1."""


class MatroidError(Exception):
    pass


class AxiomViolation(MatroidError):
    """A rank table breaks one of the rank axioms.  ``witness`` holds the
    offending subsets as tuples of labels."""

    def __init__(self, axiom: str, witness=()):
        self.axiom = axiom
        self.witness = tuple(witness)
        msg = axiom
        if self.witness:
            msg += ": " + ", ".join("{" + ",".join(w) + "}" for w in self.witness)
        super().__init__(msg)


class CyclicFlatMismatch(AxiomViolation):
    """The given (set, rank) list is not the cyclic-flat system of a matroid."""


class EmptyFamily(MatroidError):
    pass


class LabelCollision(MatroidError):
    pass


class GroundMismatch(MatroidError):
    pass


class NotAQuotient(MatroidError):
    pass


class NotMatched(MatroidError):
    def __init__(self, which: str = "", detail: str = ""):
        self.which = which
        self.detail = detail
        super().__init__(" ".join(s for s in ("not matched", which, detail) if s))


class CapExceeded(MatroidError):
    pass


class SizeCapExceeded(CapExceeded):
    pass


class CoverageGap(MatroidError):
    pass


class GpcPreconditionFailed(MatroidError):
    def __init__(self, condition: str, witness=()):
        self.condition = condition
        self.witness = tuple(witness)
        super().__init__(condition + (f" {self.witness}" if self.witness else ""))


class NotRepresentable(MatroidError):
    pass


class SchemaError(MatroidError):
    """An input document does not follow the matspl/1 layout."""
