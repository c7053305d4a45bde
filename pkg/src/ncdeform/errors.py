"""Exception hierarchy shared by every ncdeform module."""


class NCDeformError(Exception):
    """Base class for all library errors."""


class PoleError(NCDeformError, ValueError):
    """Raised when cos(pi*theta) vanishes, i.e. theta = 1/2 mod 1."""


class InadmissibleParams(NCDeformError, ValueError):
    """Raised when an operation needs mu > 0 and |mu cos(pi theta)| > 1."""


class DomainMismatch(NCDeformError, TypeError):
    """Operands live over different coefficient domains or alphabets."""


AlphabetMismatch = DomainMismatch


class ParseError(NCDeformError, ValueError):
    """Syntax error in an algebra expression.

    Attributes
    ----------
    position : int
        Offset into the source text where parsing stopped.
    expected : frozenset of str
        Token kinds that would have been accepted there.
    """

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = frozenset(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class IncompatibleRule(NCDeformError, ValueError):
    """A rewrite rule whose right-hand side is not below its left-hand side."""


class StepCapExceeded(NCDeformError, RuntimeError):
    """Normal form computation did not terminate within the step budget."""


class NotConfluent(NCDeformError, ArithmeticError):
    """An overlap ambiguity resolves to two different normal forms."""

    def __init__(self, ambiguity, difference):
        self.ambiguity = ambiguity
        self.difference = difference
        super().__init__(
            f"ambiguity {ambiguity.overlap_text()} does not resolve; "
            f"difference = {difference}"
        )


class NotClosed(NCDeformError, ValueError):
    """Product of a T-index with an S-index has no single-term closed form."""


class DomainError(NCDeformError, ValueError):
    """A matrix element would require the square root of a negative number."""


class DegenerateFit(NCDeformError, ArithmeticError):
    """Least-squares fit with a vanishing design matrix."""


class NotPositive(NCDeformError, ArithmeticError):
    """Square root requested for a matrix that is not positive definite."""


class SpectralViolation(NCDeformError, AssertionError):
    """An eigenvalue fell below the proven lower bound."""


class BoxTooLarge(NCDeformError, ValueError):
    """More basis indices than the matrix algebra has dimensions."""
