"""Exception types shared across the package."""


class MistError(Exception):
    """Base class for all errors raised by this package."""


class DisconnectedInput(MistError):
    """The input graph is not connected."""


class SizeCapExceeded(MistError):
    """An exact solver was invoked above its configured size cap."""


class BadParams(MistError):
    """A generator or CLI call received out-of-range parameters."""


class StaleWitness(MistError):
    """A reduction witness no longer matches the graph it is applied to."""


class ArityMismatch(MistError):
    """A lift received the wrong number of subtrees for its reduction."""


class NonTermination(MistError):
    """A rewrite loop exceeded its termination budget."""


class InternalInvariant(MistError):
    """An internal structural invariant failed; indicates a bug."""


class PreconditionViolated(MistError):
    """A routine was invoked on input that violates its preconditions."""


class ParseError(MistError):
    """Base class for edge-list file parse failures."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class BadHeader(ParseError):
    pass


class BadEdgeLine(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class SelfLoop(ParseError):
    pass


class IdOutOfRange(ParseError):
    pass
