"""Exception types shared across the package."""


class KmcdsError(Exception):
    """Base class for all package errors."""


class ParseError(KmcdsError):
    """Malformed instance file. Carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(KmcdsError):
    """Instance content violates a semantic constraint (e.g. negative radius)."""


class PreconditionViolation(KmcdsError):
    """A documented precondition of an operation does not hold."""


class InfeasibleInstance(KmcdsError):
    """The requested solution does not exist (e.g. graph is not k-connected)."""


class Infeasible(KmcdsError):
    """An optimization subproblem has no feasible solution."""


class InfiniteCut(KmcdsError):
    """Sources and sinks cannot be separated by removable nodes."""


class NoPathError(KmcdsError):
    """No covering path exists; signals a violated feasibility assumption."""


class StallError(KmcdsError):
    """Covering loop cannot progress: uncovered cuts but no buyable coverer."""


class BudgetExceeded(KmcdsError):
    """Exhaustive-search size cap exceeded; never silently truncated."""


class InternalCheckError(KmcdsError):
    """A structural invariant failed at runtime; indicates a bug."""
