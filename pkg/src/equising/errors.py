"""Exception taxonomy shared by all modules.

Every error that can reach the CLI carries a stable ``code`` used for
exit-status mapping and JSON error documents.
"""


class EquisingError(Exception):
    """Base class; ``code`` is a stable machine-readable identifier."""

    code = "error"


class InputError(EquisingError):
    """User-supplied data is unusable (CLI exit status 2)."""

    code = "input"


class ParseError(InputError):
    code = "syntax"

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariable(ParseError):
    code = "unknown-variable"


class ZeroPolynomial(InputError):
    code = "zero-polynomial"


class ReducibleMinimalPolynomial(InputError):
    code = "reducible-minimal-polynomial"


class NotReduced(InputError):
    code = "not-reduced"


class NotLocal(InputError):
    code = "not-local"


class NonIsolated(InputError):
    code = "non-isolated"


class DegenerateDiagram(InputError):
    code = "degenerate-diagram"


class NotConvenient(InputError):
    code = "not-convenient"


class NotApplicable(InputError):
    code = "not-applicable"


class BasisNotMonomial(EquisingError):
    code = "basis-not-monomial"


class InfiniteColength(EquisingError):
    code = "infinite-colength"


class InvalidTree(InputError):
    code = "invalid-tree"


class NotReducedSuspected(EquisingError):
    """Blow-up depth cap exceeded; only non-reduced input fails to terminate."""

    code = "not-reduced-suspected"


class EngineError(EquisingError):
    """An internal cross-check failed; indicates a bug, never user error."""

    code = "engine"
