"""Exception hierarchy shared by all modules."""


class MetricContError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MetricContError, ValueError):
    """A weight lies below the admissible floor of a triangle family."""

    def __init__(self, message, values=()):
        super().__init__(message)
        self.values = tuple(values)


class EmptyInput(MetricContError, ValueError):
    pass


class UnsupportedTransform(MetricContError):
    pass


class ModeError(MetricContError, ValueError):
    """Requested numeric mode cannot represent the family or the input."""


class ParseError(MetricContError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DuplicateEdge(ParseError):
    pass


class SelfLoop(ParseError):
    pass


class NegativeWeight(ParseError):
    pass


class InvalidPath(MetricContError, ValueError):
    pass


class NotMetrizable(MetricContError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class TooLarge(MetricContError):
    pass


class InternalError(MetricContError, AssertionError):
    pass
