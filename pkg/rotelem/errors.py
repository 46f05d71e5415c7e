# rotelem/errors.py --- Base Exceptions
#
# Every exception carries the exit status used by the command-line
# interface when the exception is not caught.


class RotelemError(Exception):
    """Base class for exceptions in this package."""

    exit_status = 1

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message


class WordError(RotelemError, ValueError):
    """Exception raised for malformed word literals and undefined word operations"""

    exit_status = 2


class SpecError(RotelemError):
    """Exception raised when a spec file or the model it describes is invalid

    The fields ``line`` and ``column`` are 1-based and are ``None`` when
    the problem is not tied to a single position of the input text."""

    exit_status = 2

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return self.message

        if self.column is None:
            return f"line {self.line}: {self.message}"

        return f"line {self.line}, column {self.column}: {self.message}"


class SpecSyntaxError(SpecError):
    """Exception raised when a line of a spec file cannot be parsed"""

    pass


class UnknownIdentifier(SpecError):
    """Exception raised when a vertex, edge or generator name is not defined"""

    pass


class InvariantViolation(SpecError):
    """Exception raised when a well-formed input violates a model invariant"""

    pass


class GraphError(InvariantViolation):
    """Exception raised for disconnected graphs, looped edges and bad trees"""

    pass


class LabelingError(InvariantViolation):
    """Exception raised when a path does not fit the labeling it is lifted with"""

    pass


class MapError(InvariantViolation):
    """Exception raised when a vertex map is not a valid map homotopic to the identity"""

    pass


class HypothesisUnmet(RotelemError):
    """Exception raised when the hypotheses of an analysis do not hold"""

    exit_status = 3


class ResourceCapExceeded(RotelemError):
    """Exception raised when an iterated path would exceed the length cap"""

    exit_status = 4

    def __init__(self, length, cap):
        super().__init__(
            f"path of {length} steps exceeds the cap of {cap} steps "
            "(use --max-path-length to raise it)"
        )
        self.length = length
        self.cap = cap
