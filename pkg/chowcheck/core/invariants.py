"""
Projective invariants of marked points: cross-ratios (collinear points,
pencils through a center, with the explicit-line rule for labels that
coincide with the center), triple ratios (cevian and Menelaus routes),
the Ceva ratio and the two product identities of cross-ratios.

Every function works over rationals and over chart polynomials alike.
Values are returned as `InvariantValue`, a numerator/denominator pair
in the scalar ring that keeps the degenerate states 0/0 and x/0.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

import enum
import re
from typing import Mapping

from sympy.polys.rings import PolyElement

from .exceptions import (
    BadTransversalError,
    DegenerateTriangleError,
    GeometryError,
    MissingLineError,
    NotCollinearError,
    PointOffSideError,
)
from .geometry import (
    ProjLine,
    ProjPoint,
    cross,
    det3,
    dot,
    is_identically_equal,
    join,
    meet,
    transform_line,
    transform_point,
)
from .logger import chowlogger
from .poly import evaluate, monomial_content
from .scalar import Comparison, ExtScalar


__all__ = [
    'Degeneracy',
    'InvariantSpec',
    'CrossRatioSpec',
    'TripleRatioSpec',
    'parse_invariant',
    'InvariantValue',
    'Configuration',
    'cross_ratio_collinear',
    'cross_ratio_pencil',
    'triple_ratio_cevian',
    'triple_ratio_menelaus',
    'ceva_ratio',
    'check_identity_1',
    'check_identity_2',
    'evaluate_invariant',
]


CR_PATTERN = re.compile(
    r"^cr\(\s*([A-Z])\s*,\s*([A-Z])\s*;\s*([A-Z])\s*,\s*([A-Z])\s*\|\s*([A-Z])\s*\)$"
)
TR_PATTERN = re.compile(
    r"^tr\(\s*([A-Z])\s*,\s*([A-Z])\s*,\s*([A-Z])\s*;"
    r"\s*([A-Z])\s*,\s*([A-Z])\s*,\s*([A-Z])\s*\)$"
)


class Degeneracy(enum.Enum):
    """Expected or observed state of an invariant at the base point."""

    ZERO = "zero"
    INFINITY = "inf"
    UNDEFINED = "undef"
    NONZERO = "nonzero"

    def __str__(self):
        return self.value


class InvariantSpec:
    """Base class of the invariant literals used in case files."""

    kind = ""

    def __init__(self, labels):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"labels of {self} are not distinct")

    def __eq__(self, other):
        if not isinstance(other, InvariantSpec):
            return NotImplemented
        return self.kind == other.kind and self.labels == other.labels

    def __hash__(self):
        return hash((self.kind, self.labels))

    def __repr__(self):
        return f"{self.__class__.__name__}('{self}')"

    def relabel(self, mapping: Mapping[str, str]) -> InvariantSpec:
        """Same invariant with every label replaced through `mapping`."""
        return type(self)(*self._group([mapping.get(x, x) for x in self.labels]))

    def _group(self, labels):
        raise NotImplementedError


class CrossRatioSpec(InvariantSpec):
    """[a,b;c,d] seen from `center`, written cr(a,b;c,d|center)."""

    kind = "cr"

    def __init__(self, a, b, c, d, center):
        super().__init__((a, b, c, d, center))

    def _group(self, labels):
        return labels

    @property
    def center(self):
        return self.labels[4]

    def __str__(self):
        a, b, c, d, e = self.labels
        return f"cr({a},{b};{c},{d}|{e})"


class TripleRatioSpec(InvariantSpec):
    """{A,B,C;P,Q,R}, written tr(A,B,C;P,Q,R)."""

    kind = "tr"

    def __init__(self, triangle, targets):
        super().__init__(tuple(triangle) + tuple(targets))

    def _group(self, labels):
        return labels[:3], labels[3:]

    @property
    def triangle(self):
        return self.labels[:3]

    @property
    def targets(self):
        return self.labels[3:]

    def __str__(self):
        a, b, c, p, q, r = self.labels
        return f"tr({a},{b},{c};{p},{q},{r})"


def parse_invariant(text: str) -> InvariantSpec:
    """Parses "cr(A,B;C,D|E)" or "tr(A,B,C;P,Q,R)". Raises ValueError."""
    text = text.strip()
    mo = CR_PATTERN.match(text)
    if mo:
        return CrossRatioSpec(*mo.groups())
    mo = TR_PATTERN.match(text)
    if mo:
        labels = mo.groups()
        return TripleRatioSpec(labels[:3], labels[3:])
    raise ValueError(f"not an invariant literal: '{text}'")


def _reduce_factors(nums: list, dens: list):
    """
    Multiplies out numerator and denominator factors. For polynomial
    factors the monomial content is removed and proportional
    numerator/denominator factors cancel against each other.
    """
    if any(not f for f in nums) and any(not f for f in dens):
        zero = nums[0] * 0
        return zero, zero
    if not isinstance(nums[0], PolyElement):
        num, den = nums[0], dens[0]
        for f in nums[1:]:
            num = num * f
        for f in dens[1:]:
            den = den * f
        return num, den
    ring = nums[0].ring
    if any(not f for f in nums):
        return ring.zero, ring.one
    if any(not f for f in dens):
        return ring.one, ring.zero
    num_monom = [0] * ring.ngens
    den_monom = [0] * ring.ngens
    num_parts, den_parts = [], []
    for factors, monom, parts in ((nums, num_monom, num_parts), (dens, den_monom, den_parts)):
        for f in factors:
            content, rest = monomial_content(f)
            for i, e in enumerate(content):
                monom[i] += e
            parts.append(rest)
    scale_num, scale_den = ring.domain.one, ring.domain.one
    for i, p in enumerate(num_parts):
        for j, q in enumerate(den_parts):
            if p is None or q is None:
                continue
            if p.monic() == q.monic():
                scale_num *= p.LC
                scale_den *= q.LC
                num_parts[i] = den_parts[j] = None
                break
    common = [min(a, b) for a, b in zip(num_monom, den_monom)]
    num = ring({tuple(a - c for a, c in zip(num_monom, common)): scale_num})
    den = ring({tuple(b - c for b, c in zip(den_monom, common)): scale_den})
    for p in num_parts:
        if p is not None:
            num = num * p
    for q in den_parts:
        if q is not None:
            den = den * q
    return num, den


class InvariantValue:
    """
    The value num/den of an invariant in the scalar ring of the
    configuration. 0/0 is the undefined state.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    @classmethod
    def from_factors(cls, nums: list, dens: list) -> InvariantValue:
        return cls(*_reduce_factors(nums, dens))

    def __repr__(self):
        return f"InvariantValue({self.num}, {self.den})"

    def __mul__(self, other):
        if not isinstance(other, InvariantValue):
            return NotImplemented
        return InvariantValue(self.num * other.num, self.den * other.den)

    def __neg__(self):
        return InvariantValue(-self.num, self.den)

    def classify(self) -> Degeneracy:
        if not self.num and not self.den:
            return Degeneracy.UNDEFINED
        if not self.num:
            return Degeneracy.ZERO
        if not self.den:
            return Degeneracy.INFINITY
        return Degeneracy.NONZERO

    def to_ext(self) -> ExtScalar:
        """The value as extended scalar. Rational scalars only."""
        return ExtScalar(self.num, self.den)

    def at(self, assignment: Mapping) -> ExtScalar:
        """Evaluates polynomial num and den at a full assignment."""
        return ExtScalar(evaluate(self.num, assignment), evaluate(self.den, assignment))

    def cleared_difference(self, other: InvariantValue):
        """num * other.den - other.num * den: zero iff the values agree."""
        return self.num * other.den - other.num * self.den


class Configuration:
    """
    Marked points by label plus the explicitly declared lines attached
    to pairs of labels. Serves as resolver for invariant evaluation.
    """

    def __init__(self, points: Mapping[str, ProjPoint], lines: Mapping | None = None):
        self.points = dict(points)
        self.lines = {}
        for key, line in (lines or {}).items():
            self.lines[frozenset(key)] = line

    def __repr__(self):
        return f"Configuration({sorted(self.points)})"

    def point(self, label: str) -> ProjPoint:
        try:
            return self.points[label]
        except KeyError:
            raise GeometryError(f"no point labelled '{label}'") from None

    def line(self, a: str, b: str) -> ProjLine | None:
        """The declared line for the pair, or None."""
        return self.lines.get(frozenset((a, b)))

    def map(self, function) -> Configuration:
        """Configuration with `function` applied to every coordinate."""
        return Configuration(
            {k: p.map(function) for k, p in self.points.items()},
            {k: l.map(function) for k, l in self.lines.items()},
        )

    def transform(self, matrix) -> Configuration:
        """Image under a projective transformation given by its matrix."""
        return Configuration(
            {k: transform_point(matrix, p) for k, p in self.points.items()},
            {k: transform_line(matrix, l) for k, l in self.lines.items()},
        )

    def resolved_line(self, a: str, b: str):
        """
        The line through a and b: the declared one if present, else the
        join. Raises MissingLineError for coinciding points without a
        declared line.
        """
        line = self.line(a, b)
        if line is not None:
            return tuple(line)
        pa, pb = self.point(a), self.point(b)
        if is_identically_equal(pa, pb):
            raise MissingLineError(f"points {a} and {b} coincide and no line is declared")
        return cross(pa, pb)


def _pencil_factors(config: Configuration, a, b, c, d, center):
    e = config.point(center)
    explicit = {}
    for label in (a, b, c, d):
        point = config.point(label)
        line = config.line(label, center)
        if line is None:
            if is_identically_equal(point, e):
                raise MissingLineError(
                    f"{label} coincides with center {center} and no line is declared"
                )
        else:
            geometric = cross(e, point)
            if any(geometric) and not is_identically_equal(geometric, line):
                chowlogger.warning(
                    f"declared line {label},{center} differs from the join; "
                    f"using the declared line"
                )
        explicit[label] = line

    def line_of(label):
        if explicit[label] is not None:
            return tuple(explicit[label])
        return cross(e, config.point(label))

    both = any(
        explicit[x] is not None and explicit[y] is not None
        for x, y in ((a, c), (b, d), (b, c), (a, d))
    )

    def factor(x, y):
        if both:
            return det3(line_of(x), line_of(y), e)
        if explicit[x] is not None:
            return dot(explicit[x], config.point(y))
        if explicit[y] is not None:
            return -dot(explicit[y], config.point(x))
        return det3(config.point(x), config.point(y), e)

    return [factor(a, c), factor(b, d)], [factor(b, c), factor(a, d)]


def cross_ratio_pencil(spec: CrossRatioSpec, config: Configuration) -> InvariantValue:
    """
    [A,B;C,D]_E = |A,C,E| |B,D,E| / (|B,C,E| |A,D,E|). A label with a
    declared line to the center uses the incidence form of that line.
    """
    nums, dens = _pencil_factors(config, *spec.labels)
    return InvariantValue.from_factors(nums, dens)


def _off_line_reference(line):
    # one of the coordinate points is never on a nonzero line
    for i in range(3):
        if line[i]:
            unit = [line[i] * 0] * 3
            unit[i] = unit[i] + 1
            return unit
    raise GeometryError("zero line")


def cross_ratio_collinear(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint) -> InvariantValue:
    """
    [A,B;C,D] = (AC/BC) : (AD/BD) of four points on a common line.
    Raises NotCollinearError otherwise. Four coinciding points give the
    undefined value.
    """
    points = (a, b, c, d)
    line = None
    for i in range(4):
        for j in range(i + 1, 4):
            if not is_identically_equal(points[i], points[j]):
                line = cross(points[i], points[j])
                break
        if line is not None:
            break
    if line is None:
        zero = a[0] * 0
        return InvariantValue(zero, zero)
    if any(dot(line, p) for p in points):
        raise NotCollinearError(f"points {a}, {b}, {c}, {d} are not collinear")
    o = _off_line_reference(line)
    nums = [det3(a, c, o), det3(b, d, o)]
    dens = [det3(b, c, o), det3(a, d, o)]
    return InvariantValue.from_factors(nums, dens)


def _cevian_lines(spec: TripleRatioSpec, config: Configuration):
    a, b, c, p, q, r = spec.labels
    pa, pb, pc = config.point(a), config.point(b), config.point(c)
    if not det3(pa, pb, pc):
        raise DegenerateTriangleError(f"triangle {a}{b}{c} is degenerate")
    return (
        config.resolved_line(a, p),
        config.resolved_line(b, q),
        config.resolved_line(c, r),
    )


def triple_ratio_cevian(spec: TripleRatioSpec, config: Configuration) -> InvariantValue:
    """
    {A,B,C;P,Q,R} from the cevians AP, BQ, CR:
    -<CR,A><AP,B><BQ,C> / (<CR,B><AP,C><BQ,A>).
    """
    a, b, c = (config.point(x) for x in spec.triangle)
    l_ap, l_bq, l_cr = _cevian_lines(spec, config)
    nums = [-dot(l_cr, a), dot(l_ap, b), dot(l_bq, c)]
    dens = [dot(l_cr, b), dot(l_ap, c), dot(l_bq, a)]
    return InvariantValue.from_factors(nums, dens)


def triple_ratio_menelaus(
    spec: TripleRatioSpec,
    transversal: ProjLine,
    config: Configuration,
) -> InvariantValue:
    """
    {A,B,C;P,Q,R} = -[A,B;R',Z] [B,C;P',X] [C,A;Q',Y] where P', Q', R'
    are the cevian feet on the sides and X, Y, Z the intersections of
    the transversal with BC, CA, AB.
    """
    a, b, c = (config.point(x) for x in spec.triangle)
    for label, vertex in zip(spec.triangle, (a, b, c)):
        if not dot(transversal, vertex):
            raise BadTransversalError(f"transversal passes through {label}")
    l_ap, l_bq, l_cr = _cevian_lines(spec, config)
    side_bc, side_ca, side_ab = join(b, c), join(c, a), join(a, b)
    p_foot = meet(ProjLine(*l_ap), side_bc)
    q_foot = meet(ProjLine(*l_bq), side_ca)
    r_foot = meet(ProjLine(*l_cr), side_ab)
    x = meet(transversal, side_bc)
    y = meet(transversal, side_ca)
    z = meet(transversal, side_ab)
    value = (
        cross_ratio_collinear(a, b, r_foot, z)
        * cross_ratio_collinear(b, c, p_foot, x)
        * cross_ratio_collinear(c, a, q_foot, y)
    )
    return -value


def ceva_ratio(
    a: ProjPoint, b: ProjPoint, c: ProjPoint,
    d: ProjPoint, e: ProjPoint, f: ProjPoint,
) -> InvariantValue:
    """
    (AF * BD * CE) / (FB * DC * EA) for D on BC, E on CA and F on AB.
    Each oriented ratio is read off the decomposition of the point in
    the two vertices of its side.
    """
    if not det3(a, b, c):
        raise DegenerateTriangleError("triangle ABC is degenerate")
    for point, (u, v), name in ((d, (b, c), "D"), (e, (c, a), "E"), (f, (a, b), "F")):
        if det3(u, v, point):
            raise PointOffSideError(f"{name} is not on its side")
    nums = [det3(a, f, c), det3(b, d, a), det3(c, e, b)]
    dens = [det3(f, b, c), det3(d, c, a), det3(e, a, b)]
    return InvariantValue.from_factors(nums, dens)


def _product_identity(factors: list[tuple[list, list]]) -> Comparison:
    """
    Fraction semantics: the identity holds if the product of all
    numerator factors equals the product of all denominator factors.
    The check is incomparable only if every factor is 0/0; a single
    collapsed factor makes both products vanish.
    """
    num_total = den_total = None
    collapsed = 0
    for nums, dens in factors:
        num = nums[0] * nums[1]
        den = dens[0] * dens[1]
        if not num and not den:
            collapsed += 1
        num_total = num if num_total is None else num_total * num
        den_total = den if den_total is None else den_total * den
    if collapsed == len(factors):
        return Comparison.INCOMPARABLE
    if num_total - den_total:
        return Comparison.UNEQUAL
    return Comparison.EQUAL


def _plain(points: Mapping) -> Configuration:
    return Configuration(points)


def check_identity_1(a, b, c, d, e) -> Comparison:
    """[A,B;C,D]_E * [A,B;D,E]_C * [A,B;E,C]_D = 1."""
    config = _plain({"A": a, "B": b, "C": c, "D": d, "E": e})
    try:
        factors = [
            _pencil_factors(config, "A", "B", "C", "D", "E"),
            _pencil_factors(config, "A", "B", "D", "E", "C"),
            _pencil_factors(config, "A", "B", "E", "C", "D"),
        ]
    except MissingLineError:
        return Comparison.INCOMPARABLE
    return _product_identity(factors)


def check_identity_2(a, b, c, d, e, f) -> Comparison:
    """[A,B;C,D]_F * [A,B;D,E]_F * [A,B;E,C]_F = 1."""
    config = _plain({"A": a, "B": b, "C": c, "D": d, "E": e, "F": f})
    try:
        factors = [
            _pencil_factors(config, "A", "B", "C", "D", "F"),
            _pencil_factors(config, "A", "B", "D", "E", "F"),
            _pencil_factors(config, "A", "B", "E", "C", "F"),
        ]
    except MissingLineError:
        return Comparison.INCOMPARABLE
    return _product_identity(factors)


def evaluate_invariant(spec: InvariantSpec, config: Configuration) -> InvariantValue:
    """Dispatches a parsed invariant literal to its computation route."""
    if isinstance(spec, CrossRatioSpec):
        return cross_ratio_pencil(spec, config)
    if isinstance(spec, TripleRatioSpec):
        return triple_ratio_cevian(spec, config)
    raise TypeError(f"unknown invariant {spec!r}")
