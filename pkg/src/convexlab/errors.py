"""Exception types shared across the workbench."""


class ConvexLabError(Exception):
    """Base class for all workbench errors."""


class EmptyInputError(ConvexLabError):
    """An operation received an empty set where a nonempty one is required."""


class DomainError(ConvexLabError):
    """A function was applied outside its exact or convex domain."""


class ParseError(ConvexLabError):
    """A set file or scalar literal could not be parsed exactly."""

    def __init__(self, message, source=None, line=None):
        self.source = source
        self.line = line
        if source is not None and line is not None:
            message = f"{source}:{line}: {message}"
        super().__init__(message)


class ComparisonUndecided(ConvexLabError):
    """compare_radical exhausted its precision ladder and the exact fallback."""


class AuditFailure(ConvexLabError):
    """A constant-free inequality check returned FAIL.

    Carries the failing report and the input sets so callers can dump a
    counterexample.
    """

    def __init__(self, report, inputs):
        self.report = report
        self.inputs = dict(inputs)
        super().__init__(f"inequality {report.name!r} FAILED")
