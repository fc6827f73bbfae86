"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: input problems exit 2, semantic
mismatches exit 3, unsupported requests exit 4.
"""


class ReprokitError(Exception):
    """Base class for all toolkit errors."""


class InputError(ReprokitError):
    """Unreadable or malformed input."""


class ParseError(InputError, ValueError):
    """A run or qrels line violates the format contract."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DuplicateEntryError(ParseError):
    def __init__(self, topic_id: str, doc_id: str, lineno: int | None = None):
        self.topic_id = topic_id
        self.doc_id = doc_id
        super().__init__(f"duplicate entry for topic {topic_id!r}, doc {doc_id!r}", lineno)


class MismatchError(ReprokitError, ValueError):
    """Inputs are individually valid but cannot be compared."""


class TopicMismatchError(MismatchError):
    def __init__(self, message: str, only_a=(), only_b=()):
        self.only_a = tuple(only_a)
        self.only_b = tuple(only_b)
        super().__init__(message)


class NoEvaluableTopicsError(MismatchError):
    pass


class UnsupportedError(ReprokitError):
    pass


class ConvergenceError(ReprokitError, ArithmeticError):
    pass
