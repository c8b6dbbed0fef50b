"""Error types raised across the package."""


class DegenerateParamsError(ValueError):
    """Debiasing is impossible because the randomizer is uninformative (p == q)."""


class StaleBulletinError(RuntimeError):
    """A client tried to randomize against a bulletin that does not match the
    advertised hot-set size."""


class ProtocolViolationError(RuntimeError):
    """The server received a report whose tag is inconsistent with the mode it
    is currently collecting in."""


class MalformedFrameError(ValueError):
    """A wire frame is truncated, over-long, carries an unknown tag, or decodes
    to a value outside the declared domain."""


class ParseError(ValueError):
    """A transaction file contains a token that is not a non-negative integer."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class EmptyDatasetError(ValueError):
    """A transaction file contains no events."""
