"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the range an operation is defined on."""


class SizeMismatchError(ValueError):
    """Two objects that must share a vertex count do not."""


class SizeLimitError(ValueError):
    """The instance is too large for the requested exact computation."""


class FormatError(ValueError):
    """A TRN1 / PP1 text document is malformed."""


class ProcedureExhausted(RuntimeError):
    """The alignment/refinement procedure ran out of hyperedges.

    ``step_log`` holds the rows recorded up to the point of failure.
    """

    def __init__(self, message, step_log=()):
        super().__init__(message)
        self.step_log = tuple(step_log)
