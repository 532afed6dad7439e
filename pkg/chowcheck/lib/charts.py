"""
Data model of the case files: charts with polynomial point
coordinates, relations between invariants on different charts,
degeneracy facts and closed-form formulas, collected in a `CaseSpec`.

Also provides the sampling of admissible parameter values, the base
configuration of a chart, the validation of chart invariants and the
two mechanical case transformations: relabeling and saturation.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

import enum
import random
from itertools import combinations
from typing import Mapping

from sympy import QQ

from ..core.exceptions import (
    CaseValidationError,
    ChowCheckError,
    SampleRejectedError,
)
from ..core.geometry import (
    ProjPoint,
    cross,
    det3,
    dot,
    is_identically_equal,
    primitive_line,
)
from ..core.invariants import (
    Configuration,
    CrossRatioSpec,
    Degeneracy,
    InvariantSpec,
    InvariantValue,
    evaluate_invariant,
)
from ..core.logger import chowlogger
from ..core.poly import ChartRing, Definitions, RatFunc, base_value, evaluate
from ..core.utils import Serializer


DEFAULT_BOUND = 97
DEFAULT_RETRIES = 32


class VarClass(enum.Enum):
    """The class of a chart variable and the values it admits."""

    INFINITESIMAL = "inf"
    NONZERO = "nonzero"
    GENERIC = "generic"
    FREE = "free"

    def __str__(self):
        return self.value

    @property
    def is_parameter(self) -> bool:
        return self is not VarClass.INFINITESIMAL

    def admits(self, value) -> bool:
        """True if `value` is an admissible parameter value of this class."""
        if self is VarClass.NONZERO:
            return value != 0
        if self is VarClass.GENERIC:
            return value != 0 and value != 1
        return True


def draw_rational(rng: random.Random, bound: int = DEFAULT_BOUND):
    """A rational p/q with |p| <= bound and 1 <= q <= bound."""
    return QQ(rng.randint(-bound, bound), rng.randint(1, bound))


def draw_point(rng: random.Random, bound: int = DEFAULT_BOUND) -> ProjPoint:
    """A point with rational coordinates, not all zero."""
    while True:
        coordinates = [draw_rational(rng, bound) for _ in range(3)]
        if any(coordinates):
            return ProjPoint(*coordinates)


def draw_value(
    var_class: VarClass,
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    retries: int = DEFAULT_RETRIES,
):
    """
    Draws a value admitted by `var_class`; infinitesimals count as
    free here. Raises SampleRejectedError after `retries` rejections.
    """
    for _ in range(retries):
        value = draw_rational(rng, bound)
        if var_class.admits(value):
            return value
    raise SampleRejectedError(f"no admissible value for class {var_class} drawn")


class Chart(Serializer):
    """
    A chart: marked points A..F with coordinates in the case ring, the
    declared extra lines keyed by the frozenset of their two labels and
    the classes of the chart variables (in declaration order).
    """

    def __init__(self, chart_id: str, stabilized: bool = False):
        self.chart_id = str(chart_id)
        self.stabilized = stabilized
        self.variables = {}
        self.points = {}
        self.lines = {}

    def __repr__(self):
        return f"Chart({self.chart_id}, points={''.join(self.points)})"

    @property
    def labels(self) -> list[str]:
        return sorted(self.points)

    def configuration(self) -> Configuration:
        return Configuration(self.points, self.lines)

    def relabel(self, mapping: Mapping[str, str]) -> Chart:
        chart = Chart(self.chart_id, self.stabilized)
        chart.variables = dict(self.variables)
        chart.points = {mapping.get(k, k): p for k, p in self.points.items()}
        chart.lines = {
            frozenset(mapping.get(k, k) for k in key): line
            for key, line in self.lines.items()
        }
        return chart


class RelationSide(Serializer):
    """An invariant on a chart, written "<chart>:<invariant>"."""

    def __init__(self, chart_id: str, spec: InvariantSpec):
        self.chart_id = str(chart_id)
        self.spec = spec

    def __str__(self):
        return f"{self.chart_id}:{self.spec}"

    def __repr__(self):
        return f"RelationSide('{self}')"

    def relabel(self, mapping) -> RelationSide:
        return RelationSide(self.chart_id, self.spec.relabel(mapping))


class Relation(Serializer):
    """
    lhs == rhs, lhs an invariant on a chart and rhs another one or a
    constant rational function. `rhs_text` is the printed rhs.
    """

    def __init__(self, lhs: RelationSide, rhs: RelationSide | RatFunc, rhs_text: str = ""):
        self.lhs = lhs
        self.rhs = rhs
        self.rhs_text = rhs_text or str(rhs)

    def __str__(self):
        return f"{self.lhs} == {self.rhs_text}"

    def __repr__(self):
        return f"Relation('{self}')"

    def relabel(self, mapping) -> Relation:
        if isinstance(self.rhs, RelationSide):
            return Relation(self.lhs.relabel(mapping), self.rhs.relabel(mapping))
        return Relation(self.lhs.relabel(mapping), self.rhs, self.rhs_text)


class DegeneracyFact(Serializer):
    """The expected state of an invariant at the base point of a chart."""

    def __init__(self, chart_id: str, spec: InvariantSpec, expected: Degeneracy):
        self.chart_id = str(chart_id)
        self.spec = spec
        self.expected = expected

    def __str__(self):
        return f"{self.chart_id}: {self.spec} = {self.expected}"

    def relabel(self, mapping) -> DegeneracyFact:
        return DegeneracyFact(self.chart_id, self.spec.relabel(mapping), self.expected)


class Formula(Serializer):
    """A closed-form expression claimed for an invariant on a chart."""

    def __init__(self, chart_id: str, spec: InvariantSpec, expected: RatFunc, text: str = ""):
        self.chart_id = str(chart_id)
        self.spec = spec
        self.expected = expected
        self.text = text or str(expected)

    def __str__(self):
        return f"{self.chart_id}: {self.spec} = {self.text}"

    def relabel(self, mapping) -> Formula:
        return Formula(self.chart_id, self.spec.relabel(mapping), self.expected, self.text)


class CaseSpec(Serializer):
    """
    A complete case: the charts in declaration order, the relations,
    facts and formulas, and the expectations for the cotangent check.
    `mirrors` lists (name, relabeling) pairs of generated twin cases.
    """

    def __init__(self, name: str, chart_ring: ChartRing):
        self.name = name
        self.chart_ring = chart_ring
        self.charts = {}
        self.relations = []
        self.facts = []
        self.formulas = []
        self.expected_corank = None
        self.expected_spanning = None
        self.mirrors = []

    def __repr__(self):
        return f"CaseSpec({self.name}, charts={list(self.charts)})"

    def chart(self, chart_id) -> Chart:
        try:
            return self.charts[str(chart_id)]
        except KeyError:
            raise CaseValidationError(
                f"case {self.name} has no chart '{chart_id}'"
            ) from None

    @property
    def variables(self) -> list[str]:
        return list(self.chart_ring.names)

    def variable_class(self, name: str) -> VarClass:
        for chart in self.charts.values():
            if name in chart.variables:
                return chart.variables[name]
        raise CaseValidationError(f"undeclared variable '{name}'")

    @property
    def infinitesimals(self) -> list[str]:
        return [v for v in self.variables if not self.variable_class(v).is_parameter]

    @property
    def parameters(self) -> list[str]:
        return [v for v in self.variables if self.variable_class(v).is_parameter]

    def infinitesimal_gens(self) -> list:
        return [self.chart_ring.gen(v) for v in self.infinitesimals]

    def side_value(self, side: RelationSide | RatFunc) -> InvariantValue:
        """The symbolic value of a relation side."""
        if isinstance(side, RatFunc):
            return InvariantValue(side.num, side.den)
        chart = self.chart(side.chart_id)
        return evaluate_invariant(side.spec, chart.configuration())


def cleared_relation(case: CaseSpec, relation: Relation):
    """
    The cleared polynomial num_l * den_r - num_r * den_l of a relation,
    or None if a side is undefined.
    """
    left = case.side_value(relation.lhs)
    right = case.side_value(relation.rhs)
    if Degeneracy.UNDEFINED in (left.classify(), right.classify()):
        return None
    return left.cleared_difference(right)


def sample_admissible(
    case: CaseSpec,
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    retries: int = DEFAULT_RETRIES,
    definitions: Definitions | None = None,
    perturb: bool = False,
) -> dict:
    """
    A full assignment (generator -> QQ) of the case variables:
    infinitesimals are zero (drawn freely with `perturb`), parameters
    are drawn per class and solved parameters are computed from their
    definitions. Whole samples are redrawn when a solved value violates
    its class or a definition is singular.
    """
    ring = case.chart_ring
    defined = definitions or Definitions(ring)
    for attempt in range(retries):
        assignment = {}
        for name in case.variables:
            if name in defined:
                continue
            var_class = case.variable_class(name)
            if var_class.is_parameter:
                value = draw_value(var_class, rng, bound, retries)
            elif perturb:
                value = draw_value(VarClass.NONZERO, rng, bound, retries)
            else:
                value = QQ.zero
            assignment[ring.gen(name)] = value
        try:
            assignment = defined.complete(assignment)
        except ZeroDivisionError:
            continue
        if all(
            case.variable_class(name).admits(assignment[ring.gen(name)])
            for name in defined.names()
        ):
            chowlogger.debug(
                f"sample for {case.name} after {attempt + 1} draw(s): "
                + ", ".join(f"{name}={assignment[ring.gen(name)]}" for name in case.variables)
            )
            return assignment
    chowlogger.warning(f"case {case.name}: no admissible sample in {retries} draws")
    raise SampleRejectedError(
        f"case {case.name}: no admissible sample in {retries} draws"
    )


def base_configuration(
    case: CaseSpec,
    chart: Chart,
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    retries: int = DEFAULT_RETRIES,
    perturb: bool = False,
) -> tuple[Configuration, dict]:
    """
    The chart as a configuration over QQ: infinitesimals set to zero
    (or drawn with `perturb`) and parameters sampled per class. Returns
    the configuration and the assignment used.
    """
    assignment = sample_admissible(case, rng, bound, retries, perturb=perturb)
    config = chart.configuration().map(lambda c: evaluate(c, assignment))
    return config, assignment


def _in_general_position(triples) -> list | None:
    """First four entries with all four sub-triples independent, or None."""
    for quad in combinations(triples, 4):
        if all(det3(p[1], q[1], r[1]) for p, q, r in combinations(quad, 3)):
            return [label for label, _ in quad]
    return None


def chart_frame(case: CaseSpec, chart: Chart) -> list[str]:
    """
    Labels of four marked points in general position at the base
    point; for a stabilized chart the four lines in general position
    instead, named by their label pairs. Raises CaseValidationError if
    there are none.
    """
    inf_gens = case.infinitesimal_gens()

    def at_base(triple):
        return tuple(base_value(c, inf_gens) for c in triple)

    if not chart.stabilized:
        points = [(label, at_base(chart.points[label])) for label in chart.labels]
        frame = _in_general_position(points)
        if frame is None:
            raise CaseValidationError(
                f"chart {chart.chart_id}: no four points in general position "
                f"at the base point and the chart is not stabilized"
            )
        return frame
    lines = []
    for a, b in combinations(chart.labels, 2):
        line = chart.lines.get(frozenset((a, b)))
        if line is None:
            pa, pb = chart.points[a], chart.points[b]
            if is_identically_equal(pa, pb):
                continue
            line = primitive_line(cross(pa, pb))
        value = at_base(line)
        if any(value):
            lines.append((f"{a}{b}", value))
    frame = _in_general_position(lines)
    if frame is None:
        raise CaseValidationError(
            f"chart {chart.chart_id}: stabilized but no four lines in "
            f"general position at the base point"
        )
    return frame


def validate_chart(case: CaseSpec, chart: Chart):
    """
    Checks the chart invariants: variables belong to the chart, every
    declared line is incident to its points at the base point and the
    chart has a frame of points or (stabilized) lines.
    """
    ring = case.chart_ring
    for name in chart.variables:
        if name.rsplit("_", 1)[1] != chart.chart_id:
            raise CaseValidationError(
                f"variable {name} declared in chart {chart.chart_id}"
            )
    for label, point in chart.points.items():
        for coordinate in point:
            for name in ring.variables_of(coordinate):
                if name not in chart.variables:
                    raise CaseValidationError(
                        f"chart {chart.chart_id}: point {label} uses "
                        f"variable {name} of another chart"
                    )
    inf_gens = case.infinitesimal_gens()
    for key, line in chart.lines.items():
        for label in sorted(key):
            if label not in chart.points:
                raise CaseValidationError(
                    f"chart {chart.chart_id}: line through unknown point {label}"
                )
            if base_value(dot(line, chart.points[label]), inf_gens):
                raise CaseValidationError(
                    f"chart {chart.chart_id}: line {','.join(sorted(key))} "
                    f"misses {label} at the base point"
                )
    chart_frame(case, chart)


def relabel_case(case: CaseSpec, mapping: Mapping[str, str], name: str) -> CaseSpec:
    """
    The twin case with every point label replaced through `mapping`,
    in the charts and in all invariant literals alike.
    """
    twin = CaseSpec(name, case.chart_ring)
    twin.charts = {k: c.relabel(mapping) for k, c in case.charts.items()}
    twin.relations = [r.relabel(mapping) for r in case.relations]
    twin.facts = [f.relabel(mapping) for f in case.facts]
    twin.formulas = [f.relabel(mapping) for f in case.formulas]
    twin.expected_corank = case.expected_corank
    twin.expected_spanning = case.expected_spanning
    return twin


def saturate_relations(case: CaseSpec) -> list[Relation]:
    """
    Additional relations: for every pair of charts, every common label
    as center and every four-subset of the other common labels, the
    cross-ratio equality of both charts when both sides are computable
    and not undefined. Relations already in the case are skipped.
    """
    known = set()
    for relation in case.relations:
        if isinstance(relation.rhs, RelationSide):
            known.add(frozenset((str(relation.lhs), str(relation.rhs))))
    added = []
    chart_ids = list(case.charts)
    for i, first in enumerate(chart_ids):
        for second in chart_ids[i + 1:]:
            common = sorted(set(case.charts[first].points) & set(case.charts[second].points))
            for center in common:
                others = [label for label in common if label != center]
                for a, b, c, d in combinations(others, 4):
                    spec = CrossRatioSpec(a, b, c, d, center)
                    lhs, rhs = RelationSide(first, spec), RelationSide(second, spec)
                    if frozenset((str(lhs), str(rhs))) in known:
                        continue
                    try:
                        values = [case.side_value(lhs), case.side_value(rhs)]
                    except ChowCheckError:
                        continue
                    if any(v.classify() is Degeneracy.UNDEFINED for v in values):
                        continue
                    added.append(Relation(lhs, rhs))
    chowlogger.debug(f"saturation adds {len(added)} relations to {case.name}")
    return added


def base_point(value: InvariantValue, inf_gens) -> InvariantValue:
    """The value with all infinitesimals set to zero, unreduced."""
    return InvariantValue(base_value(value.num, inf_gens), base_value(value.den, inf_gens))
