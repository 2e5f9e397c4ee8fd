"""Exception types shared across the package."""


class ConedecError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(ConedecError):
    """A matrix or vector has the wrong dimensions for the operation."""


class SingularMatrixError(ConedecError):
    """Inversion of a singular square matrix was requested."""


class PivotError(ConedecError):
    """A pivot entry required to be nonzero is zero."""


class RankError(ConedecError):
    """The coefficient matrix does not have full row rank."""

    def __init__(self, found: int, required: int):
        self.found = found
        self.required = required
        super().__init__(f"matrix rank is {found}, full row rank {required} required")


class FormulaError(ConedecError):
    """An expansion formula was applied outside its validity range."""


class NoPositiveSolutionError(ConedecError):
    """A homogeneous run hit a row without both signs, so the system
    cannot have a strictly positive solution."""


class DegenerateConeError(ConedecError):
    """A cone term has a zero generator and admits no series reading."""


class EvalPointError(ConedecError):
    """An evaluation point makes some denominator factor vanish."""


class ParseError(ConedecError):
    """A system file failed to parse."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
