import pytest

from ..lib.casefile import parse_case, read_case
from ..lib.corpus import load_corpus
from ..lib.facts import check_fact, check_facts
from .test_casefile import SMALL


def test_facts_of_simple_case(corpus_dir):
    report = check_facts(read_case(corpus_dir / "Y5.simple.case"))
    assert report.passed
    assert [result.observed for result in report.results] == ["zero", "zero", "nonzero"]


def test_failing_fact_is_reported():
    case = parse_case(SMALL + "fact 1: cr(A,B;C,D|E) = zero\n")
    report = check_facts(case)
    assert not report.passed
    assert len(report.failures) == 1
    failure = report.failures[0]
    assert failure.expected == "zero"
    assert failure.observed == "nonzero"
    assert failure.value


def test_fact_error_is_an_entry():
    text = SMALL + "point F = (1 : t_1 : 1 + x_1)\nfact 1: cr(A,B;C,F|E) = zero\n"
    case = parse_case(text)
    result = check_fact(case, case.facts[1])
    assert not result.passed
    assert result.observed == ""
    assert "coincides" in result.error


def test_facts_report_serialize(datadir):
    document = check_facts(read_case(datadir / "constrained.case")).serialize()
    assert document["case"] == "constrained"
    assert document["passed"] is True
    assert document["facts"][0]["passed"] is True
    assert document["facts"][0]["observed"] == "nonzero"


@pytest.mark.parametrize(
    "name, rigid", [
        ("B.2", ["4", "5"]),
        ("F.1", ["4", "5", "6"]),
    ]
)
def test_facts_of_rigid_charts(corpus_dir, name, rigid):
    case = read_case(corpus_dir / f"{name}.case")
    for chart_id in rigid:
        assert not case.chart(chart_id).variables
    report = check_facts(case)
    assert report.passed, [f.fact for f in report.failures]
    on_rigid = [fact for fact in case.facts if fact.chart_id in rigid]
    assert len(on_rigid) >= 4 * len(rigid)


@pytest.mark.corpus
def test_corpus_facts(corpus_dir):
    for case in load_corpus(corpus_dir):
        report = check_facts(case)
        assert report.passed, [f.fact for f in report.failures]
