import random

import pytest
from sympy import QQ

from ..core.exceptions import CaseValidationError, SampleRejectedError
from ..core.geometry import ProjPoint
from ..core.invariants import Degeneracy, parse_invariant
from ..core.poly import Definitions, RatFunc, evaluate, ratfunc_equal
from ..lib.casefile import parse_case, read_case
from ..lib.charts import (
    RelationSide,
    VarClass,
    base_configuration,
    base_point,
    chart_frame,
    cleared_relation,
    draw_point,
    draw_rational,
    draw_value,
    relabel_case,
    sample_admissible,
    saturate_relations,
)
from .test_casefile import SMALL


@pytest.fixture
def small():
    return parse_case(SMALL)


@pytest.fixture
def constrained(datadir):
    return read_case(datadir / "constrained.case")


@pytest.mark.parametrize(
    "var_class, value, admitted", [
        (VarClass.NONZERO, QQ(0), False),
        (VarClass.NONZERO, QQ(1), True),
        (VarClass.GENERIC, QQ(0), False),
        (VarClass.GENERIC, QQ(1), False),
        (VarClass.GENERIC, QQ(-1), True),
        (VarClass.FREE, QQ(0), True),
        (VarClass.INFINITESIMAL, QQ(0), True),
    ]
)
def test_var_class_admits(var_class, value, admitted):
    assert var_class.admits(value) is admitted


def test_var_class_is_parameter():
    assert not VarClass.INFINITESIMAL.is_parameter
    assert all(c.is_parameter for c in VarClass if c is not VarClass.INFINITESIMAL)
    assert VarClass("inf") is VarClass.INFINITESIMAL


def test_draw_rational_is_bounded():
    rng = random.Random(7)
    for _ in range(50):
        value = draw_rational(rng, 5)
        assert abs(value.numerator) <= 5
        assert 1 <= value.denominator <= 5


def test_draw_point_and_value():
    rng = random.Random(11)
    assert isinstance(draw_point(rng, 3), ProjPoint)
    assert VarClass.GENERIC.admits(draw_value(VarClass.GENERIC, rng, 3))
    with pytest.raises(SampleRejectedError):
        draw_value(VarClass.NONZERO, rng, 3, retries=0)


def test_draws_are_reproducible():
    first = [draw_rational(random.Random(3)) for _ in range(3)]
    second = [draw_rational(random.Random(3)) for _ in range(3)]
    assert first == second


def test_sample_admissible(small):
    ring = small.chart_ring
    x, t = ring.gens
    assignment = sample_admissible(small, random.Random(1))
    assert assignment[x] == 0
    assert VarClass.GENERIC.admits(assignment[t])
    perturbed = sample_admissible(small, random.Random(1), perturb=True)
    assert perturbed[x] != 0


def test_sample_admissible_with_definitions(constrained):
    ring = constrained.chart_ring
    definitions = Definitions(ring)
    definitions.define("t_2", ring.gen("t_1"), ring.one)
    assignment = sample_admissible(constrained, random.Random(5), definitions=definitions)
    assert assignment[ring.gen("t_2")] == assignment[ring.gen("t_1")]


def test_sample_admissible_rejects(constrained):
    ring = constrained.chart_ring
    definitions = Definitions(ring)
    # a generic parameter must not be 1
    definitions.define("t_2", ring.one, ring.one)
    with pytest.raises(SampleRejectedError):
        sample_admissible(constrained, random.Random(5), retries=3, definitions=definitions)


def test_base_configuration(small):
    config, assignment = base_configuration(small, small.chart("1"), random.Random(2))
    t = assignment[small.chart_ring.gen("t_1")]
    assert config.point("E") == ProjPoint(QQ(1), t, QQ(1))


def test_chart_frame(small):
    assert chart_frame(small, small.chart("1")) == ["A", "B", "C", "D"]


def test_unknown_chart(small):
    with pytest.raises(CaseValidationError):
        small.chart("9")


def test_cleared_relation(constrained):
    ring = constrained.chart_ring
    x_1, t_1, y_2, t_2 = ring.gens
    cleared = cleared_relation(constrained, constrained.relations[0])
    base = {x_1: 0, y_2: 0, t_1: 3}
    assert evaluate(cleared, {**base, t_2: 3}) == 0
    assert evaluate(cleared, {**base, t_2: 5}) != 0


def test_base_point(constrained):
    chart = constrained.chart("1")
    value = constrained.side_value(RelationSide("1", constrained.facts[0].spec))
    at_base = base_point(value, constrained.infinitesimal_gens())
    assert at_base.classify() is Degeneracy.NONZERO
    assert chart.stabilized is False


def test_relabel_case(corpus_dir):
    case = read_case(corpus_dir / "F.1prime.case")
    name, mapping = case.mirrors[0]
    twin = relabel_case(case, mapping, name)
    assert twin.name == name
    assert not twin.mirrors
    assert twin.expected_corank == case.expected_corank
    for chart_id, chart in case.charts.items():
        for label, point in chart.points.items():
            assert twin.chart(chart_id).points[mapping.get(label, label)] == point
    for original, relabeled in zip(case.relations, twin.relations):
        assert relabeled.lhs.spec == original.lhs.spec.relabel(mapping)
        assert relabeled.lhs.chart_id == original.lhs.chart_id


def test_saturate_relations(constrained):
    added = saturate_relations(constrained)
    # one four-subset per center, the declared relation is skipped
    assert len(added) == 4
    assert all(r.lhs.chart_id == "1" and r.rhs.chart_id == "2" for r in added)
    assert {r.lhs.spec.center for r in added} == {"A", "B", "C", "D"}


@pytest.mark.parametrize(
    "chart_id, invariant, expected, at_base", [
        ("2", "cr(C,E;D,B|A)", "1/t_2", Degeneracy.NONZERO),
        ("1", "cr(C,A;D,B|E)", "y_1", Degeneracy.ZERO),
        ("1", "cr(A,C;F,B|E)", "t_1", Degeneracy.NONZERO),
        ("1", "cr(E,A;F,B|C)", "z_1", Degeneracy.ZERO),
    ]
)
def test_side_values_cancel_monomials(corpus_dir, chart_id, invariant, expected, at_base):
    case = read_case(corpus_dir / "A.1.case")
    value = case.side_value(RelationSide(chart_id, parse_invariant(invariant)))
    assert ratfunc_equal(RatFunc(value.num, value.den), case.chart_ring.parse(expected))
    assert base_point(value, case.infinitesimal_gens()).classify() is at_base
