"""Exception hierarchy shared by all modules."""


class RxnSkelError(Exception):
    pass


class DomainError(RxnSkelError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceError(RxnSkelError):
    """A size cap would be exceeded by materializing the requested object."""


class PreconditionError(RxnSkelError):
    """A documented precondition does not hold.

    ``check`` names the failing check so callers (and the CLI) can report it.
    """

    def __init__(self, check, message=None):
        self.check = check
        super().__init__(message or check)


class SynthesisError(PreconditionError):
    """A one-out graph cannot be realized as a 0-context graph."""


class ParseError(RxnSkelError):
    def __init__(self, message, source="<input>", line=None):
        self.source = source
        self.line = line
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")
