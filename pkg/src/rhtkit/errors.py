"""Exception hierarchy shared by every module of the toolkit."""


class RhtError(Exception):
    """Base class for all toolkit errors."""


class UsageError(RhtError, ValueError):
    """Operands do not belong together (different algebras, jets on other points, ...)."""


class DegreeRangeError(RhtError, IndexError):
    """A degree or an index lies outside the range an object was built for."""


class BoundaryError(DegreeRangeError):
    """Cohomology requested at a degree where a neighbouring differential is missing."""


class FinitenessError(RhtError):
    """A graded piece would be infinite-dimensional."""


class PresentationError(RhtError, ValueError):
    """A presentation, morphism or homotopy violates one of its defining identities."""


class UnsupportedInputError(RhtError):
    """Input is well formed but outside the hypotheses an algorithm needs."""


class MembershipError(RhtError, KeyError):
    """A point is not part of the point set a jet lives on."""


class ParseError(RhtError, ValueError):
    """Syntax error in one of the text formats; carries a line and a column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
