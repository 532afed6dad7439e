"""
Points and lines of the projective plane.

Coordinates can be taken from any commutative ring whose elements
support +, - and * and whose zero is falsy: sympy QQ elements for
concrete configurations and sympy PolyElements for chart coordinates.
All formulas are homogeneous; points are never rescaled.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

from functools import reduce
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .exceptions import (
    DegenerateFrameError,
    EqualLinesError,
    EqualPointsError,
    GeometryError,
)


__all__ = [
    'ProjPoint',
    'ProjLine',
    'cross',
    'dot',
    'det3',
    'join',
    'meet',
    'incident',
    'is_identically_equal',
    'primitive_line',
    'normalize_frame',
    'transform_point',
    'transform_line',
    'generic_position',
    'PositionReport',
]


class _Triple:
    """Common base of points and lines: three homogeneous coordinates."""

    __slots__ = ("coords",)

    def __init__(self, c0, c1, c2):
        if not (c0 or c1 or c2):
            raise GeometryError(
                f"{self.__class__.__name__} with all coordinates zero"
            )
        self.coords = (c0, c1, c2)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, index):
        return self.coords[index]

    def __eq__(self, other):
        # structural equality of the representatives
        if type(other) is not type(self):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__,) + tuple(str(c) for c in self.coords))

    def __repr__(self):
        return f"{self.__class__.__name__}({', '.join(map(str, self.coords))})"

    def __str__(self):
        return "(" + " : ".join(map(str, self.coords)) + ")"

    def map(self, function: Callable):
        """New triple of the same kind with `function` applied to each coordinate."""
        return type(self)(*(function(c) for c in self.coords))

    def equals(self, other) -> bool:
        """Projective equality: all 2x2 minors vanish."""
        return is_identically_equal(self, other)


class ProjPoint(_Triple):
    """A point (c0 : c1 : c2) of the projective plane."""

    __slots__ = ()


class ProjLine(_Triple):
    """A line given by its dual coordinates; P is on L iff sum P_i * L_i = 0."""

    __slots__ = ()


def cross(a, b) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def det3(p, q, r):
    """Determinant of the coordinate columns; zero iff collinear."""
    return dot(p, cross(q, r))


def incident(point: ProjPoint, line: ProjLine) -> bool:
    return not dot(point, line)


def is_identically_equal(a, b) -> bool:
    """True if all 2x2 minors of the two triples vanish."""
    return not any(cross(a, b))


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """The line through two distinct points."""
    coords = cross(p, q)
    if not any(coords):
        raise EqualPointsError(f"can not join equal points {p} and {q}")
    return ProjLine(*coords)


def meet(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    """The common point of two distinct lines."""
    coords = cross(l1, l2)
    if not any(coords):
        raise EqualLinesError(f"can not meet equal lines {l1} and {l2}")
    return ProjPoint(*coords)


def primitive_line(line):
    """
    A line over a polynomial ring with the common factor of its
    coordinates removed, so that evaluating at the base point does not
    collapse it by a vanishing content.
    """
    nonzero = [c for c in line if c]
    content = reduce(lambda a, b: a.gcd(b), nonzero)
    if content == content.ring.one:
        return ProjLine(*line)
    return ProjLine(*(c.exquo(content) if c else c for c in line))


def normalize_frame(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint):
    """
    Returns a 3x3 matrix (tuple of rows) M over the rationals with
    M*a ~ (1:0:0), M*b ~ (0:1:0), M*c ~ (0:0:1) and M*d ~ (1:1:1).
    Raises DegenerateFrameError if three of the points are collinear.
    """
    # rows of the adjugate map a, b, c onto the coordinate axes
    rows = (cross(b, c), cross(c, a), cross(a, b))
    scales = [dot(row, d) for row in rows]
    if not det3(a, b, c) or not all(scales):
        raise DegenerateFrameError(f"points {a}, {b}, {c}, {d} are not a frame")
    return tuple(
        tuple(entry / scale for entry in row)
        for row, scale in zip(rows, scales)
    )


def transform_point(matrix, point: ProjPoint) -> ProjPoint:
    return ProjPoint(*(dot(row, point) for row in matrix))


def transform_line(matrix, line: ProjLine) -> ProjLine:
    """
    Image of a line under the point map `matrix`: the cofactor matrix
    applied to the dual coordinates, so incidence is preserved.
    """
    cofactors = (
        cross(matrix[1], matrix[2]),
        cross(matrix[2], matrix[0]),
        cross(matrix[0], matrix[1]),
    )
    # transpose(M) * cofactors(M) = det(M) * identity
    return ProjLine(*(dot(row, line) for row in cofactors))


class PositionReport:
    """
    Degeneracies of a list of points: coincident pairs and collinear
    triples (triples containing a coincident pair are included).
    """

    def __init__(self, coincident_pairs: list, collinear_triples: list):
        self.coincident_pairs = coincident_pairs
        self.collinear_triples = collinear_triples

    def __repr__(self):
        return (
            f"PositionReport(coincident={self.coincident_pairs}, "
            f"collinear={self.collinear_triples})"
        )

    @property
    def is_generic(self) -> bool:
        return not (self.coincident_pairs or self.collinear_triples)

    @property
    def size(self) -> int:
        return len(self.coincident_pairs) + len(self.collinear_triples)


def generic_position(points: Mapping | Sequence) -> PositionReport:
    """
    Exhaustive list of projectively equal pairs and of vanishing
    det3 triples. `points` is a mapping label -> point or a sequence
    (then labels are the positions).
    """
    if isinstance(points, Mapping):
        items = list(points.items())
    else:
        items = list(enumerate(points))
    pairs = [
        (la, lb) for (la, a), (lb, b) in combinations(items, 2)
        if is_identically_equal(a, b)
    ]
    triples = [
        (la, lb, lc) for (la, a), (lb, b), (lc, c) in combinations(items, 3)
        if not det3(a, b, c)
    ]
    return PositionReport(pairs, triples)
