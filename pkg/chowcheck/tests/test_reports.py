import json

import pytest

from .. import __version__
from ..lib.casefile import read_case
from ..lib.cotangent import CotangentReport, verify_case
from ..lib.facts import check_facts
from ..lib.homology import HomologyReport
from ..lib.reports import (
    FORMAT_STRUCTURED,
    RunManifest,
    exit_status,
    render,
    render_structured,
    render_text,
    report_label,
)
from ..lib.sampler import AgreementReport, OracleReport, SampleConfig


@pytest.fixture
def manifest():
    return RunManifest("verify-case", seed=7, trials=5, bound=13, files={"a.case": "ab" * 32})


@pytest.fixture
def cotangent(datadir):
    return verify_case(read_case(datadir / "constrained.case"), SampleConfig(seed=1, trials=5))


def test_manifest(manifest):
    header = manifest.header()
    assert header.startswith(f"chowcheck v{__version__}: verify-case")
    assert "seed 7, trials 5, bound 13, jobs 1" in header
    assert "a.case  " + "ab" * 8 in header
    data = manifest.serialize()
    assert data["version"] == __version__
    assert list(data) == sorted(data)


def test_render_cotangent(manifest, cotangent):
    text = render_text(manifest, [cotangent])
    assert "constrained: corank 3 (expected 3)  PASS" in text
    assert "  constraint t_2 := t_1" in text
    assert "  spanning dt_1, dy_2, dt_2" in text
    assert text.endswith("1/1 checks passed")


def test_render_failure(manifest):
    report = CotangentReport("broken")
    report.error = "ParseError: line 1, column 1: oops"
    text = render_text(manifest, [report])
    assert "broken: corank None  FAIL" in text
    assert "  error: ParseError" in text
    assert text.endswith("0/1 checks passed")


def test_render_facts(manifest, corpus_dir):
    text = render_text(manifest, [check_facts(read_case(corpus_dir / "Y5.simple.case"))])
    assert "Y5.simple: 3/3 facts  PASS" in text


def test_render_oracles(manifest):
    oracle = OracleReport("ceva")
    oracle.equal, oracle.rejected = 4, 1
    agreement = AgreementReport("two", ["1:x == 2:x"])
    homology = HomologyReport("3b2a")
    homology.trials = homology.ones = 2
    text = render_text(manifest, [oracle, agreement, homology])
    assert "ceva: 4 equal, 0 unequal, 0 incomparable, 1 rejected  PASS" in text
    assert "two: 0 checks, 0 failures, 0 unresolved  PASS" in text
    assert "pattern 3b2a: coefficient 1 in 2/2 trials" in text
    assert "rejection rate 0.00%  PASS" in text


def test_render_structured(cotangent):
    manifest = RunManifest("verify-case", seed=7, output_format=FORMAT_STRUCTURED)
    document = json.loads(render(manifest, [cotangent]))
    assert document["passed"] is True
    assert document["manifest"]["seed"] == 7
    assert document["reports"][0]["corank"] == 3
    assert document["reports"][0]["definitions"] == ["t_2 := t_1"]
    assert render_structured(manifest, [cotangent]) == render(manifest, [cotangent])


def test_report_label_and_status(cotangent):
    homology = HomologyReport("0b8a")
    oracle = OracleReport("identity-1")
    assert report_label(homology) == "homology pattern 0b8a"
    assert report_label(oracle) == "identity-1"
    assert report_label(cotangent) == "constrained"
    assert exit_status([cotangent]) == 0
    assert exit_status([cotangent, homology]) == 1
