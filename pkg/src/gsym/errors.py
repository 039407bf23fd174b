"""Exception hierarchy shared by all gsym modules."""


class GsymError(Exception):
    """Base class for all library errors."""


class ContractError(GsymError):
    """A documented precondition was violated by the caller."""


class SizeCapError(ContractError):
    """An operation refused to run past its documented size cap."""


class GraphParseError(GsymError):
    """Malformed textual graph input; carries a 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
