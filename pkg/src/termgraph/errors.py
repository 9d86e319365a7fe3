"""Exception hierarchy shared by every module in the package."""


class TermGraphError(Exception):
    """Base class for all errors raised by this package."""


class RangeError(TermGraphError):
    """A node, input, or edge reference lies outside its valid range."""


class ArityError(TermGraphError):
    """A vector's length does not match the arity that governs it."""


class ArityMismatch(ArityError):
    """Two combined values disagree on an arity."""


class InterfaceMismatch(TermGraphError):
    """Sequential composition applied to incompatible interfaces."""


class NotAJungle(TermGraphError):
    """Operation requires edges to biject with inner nodes."""


class MultiOutputEdge(TermGraphError):
    """Operation requires every edge to produce exactly one node."""


class CyclicGraph(TermGraphError):
    """A node transitively feeds its own producing edge."""


class Unproduced(TermGraphError):
    """An inner node reachable from the outputs has no producing edge."""


class MultiplyProduced(TermGraphError):
    """An inner node reachable from the outputs has several producing edges."""


class SizeLimit(TermGraphError):
    """Graph exceeds the configured bound for exact isomorphism search."""


class WorldMismatch(TermGraphError):
    """A name or term is used relative to the wrong scope world."""


class UnmappedName(TermGraphError):
    """Environment lookup of a name that has no binding."""


class UnboundName(TermGraphError):
    """A name escaped the scope of its binder."""


class ParseError(TermGraphError):
    """Malformed program text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ScopeError(TermGraphError):
    """A program refers to a name or input that is not in scope."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
