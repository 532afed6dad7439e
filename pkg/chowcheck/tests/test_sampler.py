import logging

import pytest

from ..core.scalar import Comparison
from ..lib.casefile import parse_case, read_case
from ..lib.sampler import (
    IDENTITY_SUITES,
    OracleReport,
    SampleConfig,
    coordinate_example,
    cross_chart_agreement,
    identity_suite,
    identity_suites,
    validate_case_formulas,
    validate_formula,
)
from .test_casefile import SMALL


TWO_CHARTS = """\
case two-charts
chart 1
var x_1 class inf
var t_1 class generic
point A = (1 : 0 : 0)
point B = (0 : 1 : 0)
point C = (0 : 0 : 1)
point D = (1 : 1 : 1)
point E = (1 : t_1 : 1 + x_1)
chart 2
var t_2 class generic
point A = (1 : 0 : 0)
point B = (0 : 1 : 0)
point C = (0 : 0 : 1)
point D = (1 : 1 : 1)
point E = (1 : t_2 : 3)
rel: 1:cr(A,B;C,D|E) == 2:cr(A,B;C,D|E)
"""


@pytest.fixture
def cfg():
    return SampleConfig(seed=3, trials=12, bound=13)


@pytest.mark.parametrize(
    "kwargs", [
        {"trials": 0},
        {"bound": 1},
        {"retries": 0},
    ]
)
def test_sample_config_rejects(kwargs):
    with pytest.raises(ValueError):
        SampleConfig(**kwargs)


def test_rng_streams():
    cfg = SampleConfig(seed=5)
    assert cfg.rng("a").random() == cfg.rng("a").random()
    assert cfg.rng("a").random() != cfg.rng("b").random()
    assert cfg.rng("a").random() != SampleConfig(seed=6).rng("a").random()


def test_oracle_report_counts():
    report = OracleReport("counts")
    assert not report.passed
    report.record(Comparison.EQUAL)
    report.record(Comparison.INCOMPARABLE)
    assert report.passed
    report.record(Comparison.UNEQUAL, lambda: "first")
    report.record(Comparison.UNEQUAL, "second")
    assert (report.equal, report.unequal, report.incomparable) == (1, 2, 1)
    assert report.trials == 4
    assert report.counterexample == "first"
    assert not report.passed
    assert report.serialize()["passed"] is False


def test_valid_formula(datadir, cfg):
    case = read_case(datadir / "constrained.case")
    reports = validate_case_formulas(case, cfg)
    assert len(reports) == 1
    assert reports[0].passed
    assert reports[0].trials + reports[0].rejected == cfg.trials


def test_wrong_formula(cfg):
    case = parse_case(SMALL + "formula 1: cr(A,B;C,D|E) = t_1\n")
    report = validate_formula(case, case.formulas[0], cfg)
    assert not report.passed
    assert report.unequal
    assert " != " in report.counterexample


def test_cross_chart_agreement(cfg):
    report = cross_chart_agreement(parse_case(TWO_CHARTS), cfg)
    assert report.passed
    assert report.checked > 0
    assert report.serialize()["passed"] is True


def test_cross_chart_disagreement(cfg):
    case = parse_case(TWO_CHARTS + "rel: 1:cr(A,B;C,D|E) == 1:cr(A,B;D,C|E)\n")
    report = cross_chart_agreement(case, cfg)
    assert not report.passed
    assert report.failures > 0


def test_unresolved_relations(datadir, cfg):
    case = read_case(datadir / "constrained.case")
    report = cross_chart_agreement(case, cfg)
    # two unknowns of chart 2 in a single relation
    assert report.unresolved == [str(case.relations[0])]
    assert report.passed


def test_unresolved_relations_are_logged(datadir, cfg, caplog):
    case = read_case(datadir / "constrained.case")
    with caplog.at_level(logging.WARNING, logger="chowcheck"):
        cross_chart_agreement(case, cfg)
    messages = [r.getMessage() for r in caplog.records]
    expected = (
        f"constrained: UnresolvableRelation: relation {case.relations[0]} "
        "not resolved by the triangular solve"
    )
    assert expected in messages


@pytest.mark.parametrize("kind", sorted(IDENTITY_SUITES))
def test_identity_suite(kind, cfg):
    report = identity_suite(kind, cfg)
    assert report.passed, report.counterexample
    assert report.name == kind


def test_identity_suites(cfg):
    reports = identity_suites(SampleConfig(seed=3, trials=2))
    assert len(reports) == len(IDENTITY_SUITES) + 1
    assert all(report.passed for report in reports)


def test_unknown_identity_suite(cfg):
    with pytest.raises(ValueError):
        identity_suite("no-such-suite", cfg)


def test_coordinate_example():
    report = coordinate_example()
    assert report.passed
    assert report.equal == 1
