"""
Reading and writing of case files.

A case file is line oriented; `#` starts a comment. The statements are:

    case <name>
    mirror <name> relabel <X>=<Y>,...
    expect corank <int> [span <var>,...]
    chart <id> [stabilized]
    var <name> class <inf|nonzero|generic|free>
    point <label> = (<poly> : <poly> : <poly>)
    line <label>,<label> = (<poly> : <poly> : <poly>)
    fact <id>: <invariant> = <zero|inf|undef|nonzero>
    formula <id>: <invariant> = <ratfunc>
    rel: <id>:<invariant> == <id>:<invariant> | <ratfunc>

`var`, `point` and `line` belong to the chart opened last. Invariants
are written "cr(A,B;C,D|E)" and "tr(A,B,C;P,Q,R)".
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

import re
from pathlib import Path

from ..core.exceptions import CaseParseError, CaseValidationError
from ..core.geometry import ProjLine, ProjPoint
from ..core.invariants import Degeneracy, parse_invariant
from ..core.logger import chowlogger
from ..core.poly import ChartRing
from .charts import (
    CaseSpec,
    Chart,
    DegeneracyFact,
    Formula,
    Relation,
    RelationSide,
    VarClass,
    validate_chart,
)


CASE_PATTERN = re.compile(r"^case\s+(\S+)$")
MIRROR_PATTERN = re.compile(r"^mirror\s+(\S+)\s+relabel\s+(\S+)$")
EXPECT_PATTERN = re.compile(r"^expect\s+corank\s+(\d+)(?:\s+span\s+(\S+))?$")
CHART_PATTERN = re.compile(r"^chart\s+(\d+)(\s+stabilized)?$")
VAR_PATTERN = re.compile(r"^var\s+(\S+)\s+class\s+(\S+)$")
POINT_PATTERN = re.compile(r"^point\s+([A-Z])\s*=\s*\((.*)\)$")
LINE_PATTERN = re.compile(r"^line\s+([A-Z])\s*,\s*([A-Z])\s*=\s*\((.*)\)$")
FACT_PATTERN = re.compile(r"^fact\s+(\d+)\s*:\s*(.*?)\s*=\s*(\w+)$")
FORMULA_PATTERN = re.compile(r"^formula\s+(\d+)\s*:\s*(.*?\))\s*=\s*(.*)$")
RELATION_PATTERN = re.compile(r"^rel\s*:\s*(.*?)\s*==\s*(.*)$")
SIDE_PATTERN = re.compile(r"^(\d+)\s*:\s*((?:cr|tr)\(.*\))$")


class _Line:
    """A statement of the file with its 1-based number and offset."""

    def __init__(self, number: int, raw: str):
        self.number = number
        text = raw.split("#", 1)[0].rstrip()
        self.offset = len(text) - len(text.lstrip())
        self.text = text.strip()

    def fail(self, message, column=1):
        raise CaseParseError(message, line=self.number, column=column + self.offset)

    def invalid(self, message):
        raise CaseValidationError(f"line {self.number}: {message}")


def _statements(text: str) -> list[_Line]:
    lines = [_Line(n, raw) for n, raw in enumerate(text.splitlines(), start=1)]
    return [line for line in lines if line.text]


def _parse_expression(line: _Line, chart_ring: ChartRing, text: str, start: int, polynomial: bool):
    """Parses a sub-expression starting at 0-based `start` of the statement."""
    try:
        if polynomial:
            return chart_ring.parse_poly(text)
        return chart_ring.parse(text)
    except CaseParseError as err:
        line.fail(err.message, start + max(err.column, 1))
    except CaseValidationError as err:
        line.invalid(str(err))


def _parse_triple(line: _Line, chart_ring: ChartRing, body: str, start: int) -> list:
    parts = body.split(":")
    if len(parts) != 3:
        line.fail("three coordinates expected", start + 1)
    coordinates = []
    position = start
    for part in parts:
        coordinates.append(_parse_expression(line, chart_ring, part, position, True))
        position += len(part) + 1
    return coordinates


def _parse_spec(line: _Line, text: str):
    try:
        return parse_invariant(text)
    except ValueError as err:
        line.fail(str(err), line.text.find(text) + 1)


def _declarations(statements: list[_Line]) -> list[str]:
    names = []
    for line in statements:
        mo = VAR_PATTERN.match(line.text)
        if mo:
            names.append(mo.group(1))
    return names


def parse_case(text: str) -> CaseSpec:
    """
    Parses the contents of a case file into a validated CaseSpec.
    Raises CaseParseError (with line and column) on grammar errors and
    CaseValidationError on violated chart invariants.
    """
    statements = _statements(text)
    try:
        chart_ring = ChartRing(_declarations(statements))
    except ValueError as err:
        raise CaseValidationError(str(err)) from None
    case = None
    chart = None
    for line in statements:
        statement = line.text
        mo = CASE_PATTERN.match(statement)
        if mo:
            if case is not None:
                line.fail("second 'case' statement")
            case = CaseSpec(mo.group(1), chart_ring)
            continue
        if case is None:
            line.fail("file has to start with a 'case' statement")
        if mo := MIRROR_PATTERN.match(statement):
            mapping = {}
            for pair in mo.group(2).split(","):
                source, _, target = pair.partition("=")
                if not (source and target):
                    line.fail(f"invalid relabeling '{pair}'", mo.start(2) + 1)
                mapping[source] = target
            if sorted(mapping) != sorted(mapping.values()):
                line.invalid("relabeling is not a permutation")
            case.mirrors.append((mo.group(1), mapping))
        elif mo := EXPECT_PATTERN.match(statement):
            case.expected_corank = int(mo.group(1))
            if mo.group(2):
                case.expected_spanning = mo.group(2).split(",")
        elif mo := CHART_PATTERN.match(statement):
            chart_id = mo.group(1)
            if chart_id in case.charts:
                line.invalid(f"chart {chart_id} declared twice")
            chart = Chart(chart_id, stabilized=bool(mo.group(2)))
            case.charts[chart_id] = chart
        elif mo := VAR_PATTERN.match(statement):
            if chart is None:
                line.fail("variable outside of a chart")
            try:
                chart.variables[mo.group(1)] = VarClass(mo.group(2))
            except ValueError:
                line.fail(f"unknown variable class '{mo.group(2)}'", mo.start(2) + 1)
        elif mo := POINT_PATTERN.match(statement):
            if chart is None:
                line.fail("point outside of a chart")
            label = mo.group(1)
            if label in chart.points:
                line.invalid(f"point {label} declared twice in chart {chart.chart_id}")
            coordinates = _parse_triple(line, chart_ring, mo.group(2), mo.start(2))
            if not any(coordinates):
                line.invalid(f"point {label} has all coordinates zero")
            chart.points[label] = ProjPoint(*coordinates)
        elif mo := LINE_PATTERN.match(statement):
            if chart is None:
                line.fail("line outside of a chart")
            key = frozenset((mo.group(1), mo.group(2)))
            if len(key) != 2:
                line.invalid("line through a single label")
            coordinates = _parse_triple(line, chart_ring, mo.group(3), mo.start(3))
            if not any(coordinates):
                line.invalid("line has all coordinates zero")
            chart.lines[key] = ProjLine(*coordinates)
        elif mo := FACT_PATTERN.match(statement):
            spec = _parse_spec(line, mo.group(2))
            try:
                expected = Degeneracy(mo.group(3))
            except ValueError:
                line.fail(f"unknown degeneracy '{mo.group(3)}'", mo.start(3) + 1)
            case.facts.append(DegeneracyFact(mo.group(1), spec, expected))
        elif mo := FORMULA_PATTERN.match(statement):
            spec = _parse_spec(line, mo.group(2))
            value = _parse_expression(line, chart_ring, mo.group(3), mo.start(3), False)
            case.formulas.append(
                Formula(mo.group(1), spec, value, chart_ring.format(value))
            )
        elif mo := RELATION_PATTERN.match(statement):
            case.relations.append(_parse_relation(line, chart_ring, mo))
        else:
            line.fail(f"unrecognized statement '{statement.split()[0]}'")
    if case is None:
        raise CaseParseError("empty case file", line=1, column=1)
    _validate(case)
    chowlogger.debug(
        f"parsed case {case.name}: {len(case.charts)} charts, "
        f"{len(case.variables)} variables, {len(case.relations)} relations"
    )
    return case


def _parse_relation(line: _Line, chart_ring: ChartRing, mo) -> Relation:
    sides = []
    for index in (1, 2):
        text = mo.group(index)
        side = SIDE_PATTERN.match(text)
        if side:
            sides.append(RelationSide(side.group(1), _parse_spec(line, side.group(2))))
        elif index == 2:
            value = _parse_expression(line, chart_ring, text, mo.start(2), False)
            return Relation(sides[0], value, chart_ring.format(value))
        else:
            line.fail("relation has to start with '<chart>:<invariant>'", mo.start(1) + 1)
    return Relation(*sides)


def _check_spec(case: CaseSpec, chart_id: str, spec, where: str):
    chart = case.chart(chart_id)
    missing = [label for label in spec.labels if label not in chart.points]
    if missing:
        raise CaseValidationError(
            f"{where}: chart {chart_id} has no point {', '.join(missing)}"
        )


def _validate(case: CaseSpec):
    for name in case.variables:
        if not any(name in chart.variables for chart in case.charts.values()):
            raise CaseValidationError(f"variable {name} outside of a chart")
    for chart in case.charts.values():
        validate_chart(case, chart)
    for fact in case.facts:
        _check_spec(case, fact.chart_id, fact.spec, f"fact {fact}")
    for formula in case.formulas:
        _check_spec(case, formula.chart_id, formula.spec, f"formula {formula}")
    for relation in case.relations:
        for side in (relation.lhs, relation.rhs):
            if isinstance(side, RelationSide):
                _check_spec(case, side.chart_id, side.spec, f"relation {relation}")
    for name in case.expected_spanning or ():
        if name not in case.chart_ring.index:
            raise CaseValidationError(f"spanning differential of undeclared {name}")
    labels = set()
    for chart in case.charts.values():
        labels.update(chart.points)
    for name, mapping in case.mirrors:
        if not set(mapping) <= labels:
            raise CaseValidationError(f"mirror {name} relabels unknown points")


def read_case(path) -> CaseSpec:
    """Parses the case file at `path`."""
    return parse_case(Path(path).read_text(encoding="utf-8"))


def _triple_text(chart_ring: ChartRing, triple) -> str:
    return "(" + " : ".join(chart_ring.format_poly(c) for c in triple) + ")"


def format_case(case: CaseSpec) -> str:
    """
    Prints a case in the file grammar. parse_case(format_case(case))
    equals case, comments and layout are not kept.
    """
    ring = case.chart_ring
    lines = [f"case {case.name}"]
    for name, mapping in case.mirrors:
        pairs = ",".join(f"{k}={v}" for k, v in mapping.items())
        lines.append(f"mirror {name} relabel {pairs}")
    if case.expected_corank is not None:
        expect = f"expect corank {case.expected_corank}"
        if case.expected_spanning:
            expect += f" span {','.join(case.expected_spanning)}"
        lines.append(expect)
    for chart in case.charts.values():
        lines.append("")
        lines.append(f"chart {chart.chart_id}" + (" stabilized" if chart.stabilized else ""))
        for name, var_class in chart.variables.items():
            lines.append(f"var {name} class {var_class}")
        for label, point in chart.points.items():
            lines.append(f"point {label} = {_triple_text(ring, point)}")
        for key, line in chart.lines.items():
            lines.append(f"line {','.join(sorted(key))} = {_triple_text(ring, line)}")
    if case.facts or case.formulas:
        lines.append("")
    lines.extend(f"fact {fact}" for fact in case.facts)
    lines.extend(f"formula {formula}" for formula in case.formulas)
    if case.relations:
        lines.append("")
    lines.extend(f"rel: {relation}" for relation in case.relations)
    return "\n".join(lines) + "\n"
