"""Exception hierarchy shared by the matching library, the CLI and the API."""


class GapMatchError(Exception):
    """Base class for every error raised on purpose by this package."""


class DictionaryParseError(GapMatchError, ValueError):
    """A dictionary line does not follow the pattern grammar."""

    def __init__(self, line_no: int, line: str, reason: str):
        self.line_no = line_no
        self.line = line
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}: {line!r}")


class UnknownVertexError(GapMatchError, KeyError):
    """A query names a vertex the preprocessed graph does not have."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown vertex"


class InvalidIntervalError(GapMatchError, ValueError):
    pass


class IntervalKeyError(GapMatchError, KeyError):
    """Deleting an interval key that is not live (never issued or already deleted)."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "interval key is not live"


class StreamClosedError(GapMatchError, RuntimeError):
    pass


class EngineConfigError(GapMatchError, ValueError):
    pass


class GraphInputError(GapMatchError, ValueError):
    """An input graph breaks the simple-graph contract (self loops, negative ids)."""
