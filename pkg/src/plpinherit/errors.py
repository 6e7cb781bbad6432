"""Exception hierarchy shared by every layer of the reasoner."""


class PLPError(Exception):
    """Base class for all user-facing errors."""


class ParseError(PLPError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class GroundingError(PLPError):
    """The program or query cannot be grounded (no constants, empty base, arity clash)."""


class WorldCapError(PLPError):
    """The Herbrand base is larger than the configured world cap."""


class OracleCapError(PLPError):
    """Too many defaults for exhaustive subset enumeration."""


class UnboundedError(PLPError):
    """An LP objective is unbounded; callers only pose bounded problems."""


class InconsistentProgramError(PLPError):
    """z- or lex-entailment was requested for a program without a z-partition."""
