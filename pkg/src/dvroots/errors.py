"""Exception types shared across the package.

Every error carries a stable ``code`` (its class name) so the CLI can emit
machine-readable error objects.
"""


class Error(Exception):
    """Base class for all dvroots errors."""

    @property
    def code(self):
        return type(self).__name__


class ZeroElement(Error):
    """An operation that needs a nonzero field element received zero."""


class ZeroInverse(Error):
    """Attempt to invert zero in a residue field or residue ring."""


class NotIntegral(Error):
    """The element has negative valuation where an integral one is required."""


class ZeroPolynomial(Error):
    """The zero polynomial was passed where a nonzero one is required."""


class PrecisionError(Error):
    """A truncated value does not carry enough known digits for the request."""


class VanishingDiscriminant(Error):
    """Res(f, f') is zero; the polynomial has a repeated root."""


class HenselHypothesisFailed(Error):
    """The starting point does not satisfy v(f(g)/f'(g)^2) > 0."""


class NotRegular(Error):
    """The polynomial fails the regularity test; carries the full report."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class BudgetExceeded(Error):
    """An exhaustive residue scan would need more evaluations than allowed."""

    def __init__(self, needed, budget, edge=None):
        msg = f"residue scan needs {needed} evaluations, budget is {budget}"
        if edge is not None:
            msg += f" (edge {edge})"
        super().__init__(msg)
        self.needed = needed
        self.budget = budget
        self.edge = edge


class ParseError(Error):
    """Base class for polynomial-expression parsing failures."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PolySyntaxError(ParseError):
    """Malformed polynomial expression."""

    def __init__(self, position, expected, found=None):
        msg = f"expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg, position)
        self.expected = expected
        self.found = found


class NonIntegerExponent(ParseError):
    """A variable exponent is negative or not an integer."""


class BadFieldElement(ParseError):
    """A coefficient literal does not denote an element of the field."""
