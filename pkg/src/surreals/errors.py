"""Exception hierarchy shared by every module of the package."""


class SurrealError(Exception):
    """Base class for all errors raised by this package."""

    #: operation that raised the error, filled in by the evaluator
    operation = None


class OrdinalOverflow(SurrealError):
    """Result would reach epsilon_omega or exceed the configured atom ceiling."""


class NotAnEpsilonNumber(SurrealError):
    pass


class InvalidCut(SurrealError):
    """Some element of the left set is not below some element of the right set."""


class NonDyadicCoefficient(SurrealError):
    """Exact sign-expansion conversion needs dyadic coefficients."""


class UnsupportedTransfinite(SurrealError):
    """Parsing a transfinite sign sequence back into a normal form."""


class DivisionByZero(SurrealError, ZeroDivisionError):
    pass


class InexactDivision(SurrealError):
    """The divisor is not a monomial, so the exact quotient has infinite support."""


class InputTooDeep(SurrealError):
    """Input to the Conway recursion is beyond the configured birthday bound."""


class ZeroArgument(SurrealError):
    pass


class PositiveRequired(SurrealError):
    pass


class UnsupportedGDomain(SurrealError):
    pass


class UnsupportedHDomain(SurrealError):
    pass


class NotExactlyRepresentable(SurrealError):
    """Exact mode was requested but the value is transcendental or has infinite support."""


class NonpositiveArgument(SurrealError):
    pass


class ApproximationFlagged(SurrealError):
    """An order-truncated value was passed where an exact one is required."""


class PreconditionError(SurrealError):
    pass


class BranchDisagreement(SurrealError, AssertionError):
    """Two applicable closed forms returned different values (internal bug)."""


class ParseError(SurrealError):
    def __init__(self, message, position=None, expected=None):
        self.position = position
        self.expected = expected
        where = "" if position is None else f" at col {position}"
        super().__init__(f"syntax error{where}: {message}")


class EvalError(SurrealError):
    pass
