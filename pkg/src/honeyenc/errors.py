"""Exception hierarchy. Everything raised on purpose derives from HoneyError."""


class HoneyError(Exception):
    """Base class for errors raised by honeyenc."""


class InputError(HoneyError, ValueError):
    """Caller passed an argument that violates a precondition."""


class ParseError(HoneyError, ValueError):
    """Malformed input file. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")


class UnknownItemError(HoneyError, KeyError):
    """Lookup of a word, synset or category that does not exist."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class TrainingError(HoneyError):
    pass


class GraphError(HoneyError):
    """Structural problem in a synset graph (e.g. a hypernym cycle)."""


class GeneratorError(HoneyError):
    pass


class EncodeError(HoneyError):
    pass


class SeedRangeError(HoneyError, IndexError):
    pass


class ResourceError(HoneyError):
    """A computation would exceed its configured budget."""


class RepresentationError(HoneyError):
    """A message has no usable vector representation."""
