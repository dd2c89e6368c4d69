"""Exceptions shared across the package."""


class RingMismatchError(ValueError):
    """Operands live in different polynomial rings."""


class ZeroPolynomialError(ValueError):
    """Operation undefined for the zero polynomial (leading term, etc.)."""


class ParseError(ValueError):
    """Syntax error in polynomial or problem-file text.

    Carries the 0-based offset plus 1-based line/column of the offending
    token and a description of what was expected.
    """

    def __init__(self, message, position=None, line=None, column=None):
        self.position = position
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownVariableError(ParseError):
    """Identifier in an expression is not a variable of the ring."""

    def __init__(self, name, position=None, line=None, column=None):
        self.name = name
        super().__init__(f"unknown variable '{name}'", position, line, column)


class SemanticError(ValueError):
    """Well-formed problem file with an inconsistent declaration."""


class ResourceBoundExceeded(RuntimeError):
    """A Groebner computation exceeded the configured pair or basis cap."""


class InternalInvariantViolation(RuntimeError):
    """An identity the engine guarantees failed to hold; signals a bug."""


class NotSquareError(ValueError):
    """Square matrix required."""


class NotInvertibleError(ValueError):
    """A transformation matrix is not invertible over the local ring."""

    def __init__(self, side, determinant):
        self.side = side
        self.determinant = determinant
        super().__init__(
            f"matrix {side} is not invertible over the local ring: "
            f"det = {determinant} vanishes at the origin"
        )


class ConstantPartNonzeroError(ValueError):
    """Matrix has entries with nonzero constant term.

    The decomposability criteria assume the matrix vanishes at the origin;
    use decompose.chip_constant_part to reduce first.
    """

    def __init__(self, position, entry):
        self.position = position
        self.entry = entry
        i, j = position
        super().__init__(
            f"entry [{i}][{j}] = {entry} has nonzero constant term; "
            f"chip off the constant part first (see chip_constant_part)"
        )


class DetMismatchError(ValueError):
    """Supplied factorization does not match the determinant."""
