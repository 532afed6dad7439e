"""
Module defining chowcheck specific exceptions.
"""

# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)
#
#
# Exception Inheritance:
# ----------------------
#
# ChowCheckError
#                 |
#                 |--> GeometryError
#                 |       |
#                 |       |--> EqualPointsError
#                 |       |--> EqualLinesError
#                 |       |--> DegenerateFrameError
#                 |       |--> NotCollinearError
#                 |       |--> DegenerateTriangleError
#                 |       |--> PointOffSideError
#                 |       |--> BadTransversalError
#                 |
#                 |--> CaseFileError
#                 |       |
#                 |       |--> CaseParseError
#                 |       |--> CaseValidationError
#                 |
#                 |--> SampleRejectedError
#                 |
#                 |--> RelationError
#                 |       |
#                 |       |--> ConstantNonvanishingError
#                 |       |--> UnresolvableRelationError
#                 |
#                 |--> PivotUncertifiableError
#                 |
#                 |--> HomologyError
#                 |       |
#                 |       |--> PatternMismatchError
#                 |       |--> NonGenericDataError
#                 |
#                 |-->|--> MissingLineError
#                     |
# KeyError ---------->|
#
#


# export all Exceptions on * imports
__all__ = [
    'ChowCheckError',
    'GeometryError',
    'EqualPointsError',
    'EqualLinesError',
    'DegenerateFrameError',
    'NotCollinearError',
    'DegenerateTriangleError',
    'PointOffSideError',
    'BadTransversalError',
    'MissingLineError',
    'CaseFileError',
    'CaseParseError',
    'CaseValidationError',
    'SampleRejectedError',
    'RelationError',
    'ConstantNonvanishingError',
    'UnresolvableRelationError',
    'PivotUncertifiableError',
    'HomologyError',
    'PatternMismatchError',
    'NonGenericDataError',
    'CHOW_ERRORS',
    'error_code',
]


class ChowCheckError(Exception):
    """Base Exception for all chowcheck errors."""


class GeometryError(ChowCheckError):
    """Exception raised by degenerate input to a projective construction."""


class EqualPointsError(GeometryError):
    """
    Exception raised when joining two points that are projectively
    equal. The caller has to consult an explicit line instead.
    """


class EqualLinesError(GeometryError):
    """Exception raised when meeting two projectively equal lines."""


class DegenerateFrameError(GeometryError):
    """Four points given as a frame have three collinear members."""


class NotCollinearError(GeometryError):
    """Four points given for a collinear cross-ratio are not on one line."""


class DegenerateTriangleError(GeometryError):
    """The vertices of a triangle are collinear."""


class PointOffSideError(GeometryError):
    """A point expected on a side of a triangle is not on that side."""


class BadTransversalError(GeometryError):
    """A transversal line passes through a vertex of the triangle."""


class MissingLineError(ChowCheckError, KeyError):
    """
    A label coincides with the point it has to be joined to and the
    chart declares no line for the pair.
    Inherits from KeyError.
    So KeyError can also be used for exception handling.
    """

    def __str__(self):
        # KeyError would quote the message
        return Exception.__str__(self)


class CaseFileError(ChowCheckError):
    """Base class for errors found in case files."""


class CaseParseError(CaseFileError):
    """
    The text of a case file does not follow the grammar. Carries the
    line and column (both 1-based) of the offending position.
    """

    def __init__(self, message, line=0, column=0):
        self.message = message
        self.line = line
        self.column = column
        if line:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class CaseValidationError(CaseFileError):
    """A parsed case violates a chart invariant."""


class SampleRejectedError(ChowCheckError):
    """
    No admissible sample was drawn within the retry bound. Raised when
    the class constraints of the variables can not be met.
    """


class RelationError(ChowCheckError):
    """Base class for relations that can not enter the linear system."""


class ConstantNonvanishingError(RelationError):
    """
    The cleared relation does not vanish at the base point and can not
    be read as a parameter constraint. Signals a mistranscribed chart or
    relation.
    """


class UnresolvableRelationError(RelationError):
    """A relation can not be resolved by the triangular solve."""


class PivotUncertifiableError(ChowCheckError):
    """
    A pivot polynomial vanished at every tried admissible sample. This
    signals a genuinely constrained parameter and is never guessed around.
    """


class HomologyError(ChowCheckError):
    """Base class of the homology-coefficient checks."""


class PatternMismatchError(HomologyError):
    """The condition counts do not give eight linear conditions."""


class NonGenericDataError(HomologyError):
    """The assembled linear system has rank less than eight."""


# Collection of error codes and corresponding exceptions:
# (the codes are used in reports and structured output)
CHOW_ERRORS = {
    'EqualPoints': EqualPointsError,
    'EqualLines': EqualLinesError,
    'DegenerateFrame': DegenerateFrameError,
    'NotCollinear': NotCollinearError,
    'DegenerateTriangle': DegenerateTriangleError,
    'PointOffSide': PointOffSideError,
    'BadTransversal': BadTransversalError,
    'MissingLine': MissingLineError,
    'ParseError': CaseParseError,
    'ValidationError': CaseValidationError,
    'SampleRejected': SampleRejectedError,
    'ConstantNonvanishing': ConstantNonvanishingError,
    'UnresolvableRelation': UnresolvableRelationError,
    'PivotUncertifiable': PivotUncertifiableError,
    'PatternMismatch': PatternMismatchError,
    'NonGenericData': NonGenericDataError,
}


def error_code(error):
    """
    Returns the code from CHOW_ERRORS for the given exception instance
    or class. The most specific matching class wins. Unknown exceptions
    return their class name.
    """
    cls = error if isinstance(error, type) else type(error)
    for klass in cls.__mro__:
        for code, exc in CHOW_ERRORS.items():
            if exc is klass:
                return code
    return cls.__name__
