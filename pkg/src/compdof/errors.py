"""Exception hierarchy shared by all compdof modules."""


class CompDofError(Exception):
    """Base class for every error raised by compdof."""


class InvalidAssignmentError(CompDofError, ValueError):
    """An operation received an assignment that fails validation."""

    def __init__(self, report):
        self.report = report
        details = "; ".join(str(v) for v in report.violations)
        super().__init__(f"invalid assignment: {details}")


class InfeasibleSpecError(CompDofError, ValueError):
    """A generator specification cannot produce a valid assignment."""

    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class BudgetExceededError(CompDofError, RuntimeError):
    """Work requested exceeds the configured enumeration cap.

    ``partial`` optionally carries whatever result was computed before the
    budget ran out.
    """

    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)


class PreconditionError(CompDofError, ValueError):
    """A greedy-step precondition does not hold for the given input."""


class UnderdeterminedError(CompDofError, ValueError):
    """Fewer receive equations than unknown transmit signals."""


class MalformedProfileError(CompDofError, ValueError):
    """An expansion profile violates its structural invariants."""


class ParseError(CompDofError, ValueError):
    """Input bytes could not be decoded into an assignment document."""

    def __init__(self, message, offset=None):
        self.offset = offset
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")


class IndexRangeError(CompDofError, ValueError):
    """A transmitter or message index lies outside ``1..K``."""
