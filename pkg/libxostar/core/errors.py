"""
Exception hierarchy.

Data problems derive from `ValueError` (the command line maps them to exit
code 1), broken internal invariants derive from `RuntimeError` (exit
code 2).
"""


###############################################################################
# Data errors
###############################################################################


class DataError(ValueError):

    """
    Base class of all errors caused by input data.
    """


class ParseError(DataError):

    """
    Malformed line in a data file.

    Parameters
    ----------
    msg : `str`
        Description.
    file_path : `str`
        File being parsed.
    line_no : `int`
        One-based line number.
    """

    def __init__(self, msg, file_path=None, line_no=None):
        self.file_path = file_path
        self.line_no = line_no
        loc = []
        if file_path is not None:
            loc.append(str(file_path))
        if line_no is not None:
            loc.append("line {:d}".format(line_no))
        if loc:
            msg = "{:s} ({:s})".format(msg, ", ".join(loc))
        super().__init__(msg)


class ValidationError(DataError):

    """
    A record violates a data invariant.

    Parameters
    ----------
    record : `str`
        Record identifier (e.g. `"37a"` or `"183:b"`).
    invariant : `str`
        Name of the violated invariant.
    detail : `str`
        Additional information.
    """

    def __init__(self, record, invariant, detail=""):
        self.record = record
        self.invariant = invariant
        msg = "invalid record {:s}: {:s}".format(str(record), invariant)
        if detail:
            msg += " ({:s})".format(detail)
        super().__init__(msg)


class MissingLevelError(DataError):

    """
    The newform database does not cover a required level.
    """

    def __init__(self, level):
        self.level = level
        super().__init__("newform data does not cover level ({:d})"
                         .format(level))


class InsufficientDepthError(DataError):

    """
    Coefficient data ends before the requested index.
    """

    def __init__(self, record, depth, required):
        self.record = record
        self.depth = depth
        self.required = required
        super().__init__(
            "insufficient coefficient depth for {:s} ({:d} < {:d})"
            .format(str(record), depth, required)
        )


class MissingCoefficientError(DataError):

    """
    A required Fourier coefficient is absent.
    """


###############################################################################
# Computational errors
###############################################################################


class PrecisionError(ArithmeticError):

    """
    A power series operation would exceed the known precision.
    """


class RelationNotFoundError(ArithmeticError):

    """
    No (or no unique) algebraic relation was found among series.
    """


class DimensionMismatchError(ArithmeticError):

    """
    A graded piece has a dimension different from the expected one.
    """


class MatchError(LookupError):

    """
    A j-invariant matched no or several elliptic curve classes.
    """

    def __init__(self, msg, candidates=()):
        self.candidates = tuple(candidates)
        super().__init__(msg)


class InvariantViolation(RuntimeError):

    """
    Internal consistency check failed.
    """
