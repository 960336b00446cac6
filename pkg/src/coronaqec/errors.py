"""Exception hierarchy. Each class carries the CLI exit status it maps to."""


class CoronaQecError(Exception):
    exit_code = 1


class GraphSpecError(CoronaQecError, ValueError):
    """Malformed graph input: bad shorthand, bad edge list, bad edge."""

    exit_code = 2


class PreconditionError(CoronaQecError, ValueError):
    """Input is well-formed but outside an operation's domain."""

    exit_code = 3


class DisconnectedGraphError(PreconditionError):
    def __init__(self, unreached: int, message: str | None = None):
        self.unreached = unreached
        super().__init__(message or f"graph is disconnected: vertex {unreached} unreachable from vertex 0")


class FormulaNotEstablished(PreconditionError):
    """No corona theorem covers the requested pair."""


class VerificationError(CoronaQecError):
    exit_code = 4


class NumericalError(CoronaQecError, ArithmeticError):
    """Non-convergence, evaluation at a pole, degenerate brackets."""

    exit_code = 5


class PoleError(NumericalError):
    pass
