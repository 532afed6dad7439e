"""
Rendering of reports as text for the terminal and as one structured
(JSON) document per run. Both embed the run manifest: subcommand,
seed, sampling parameters, parallelism, package version and the
content hashes of the case files read.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

import json

from .. import __version__
from ..core.utils import Serializer
from .cotangent import CotangentReport
from .facts import FactsReport
from .homology import HomologyReport
from .sampler import AgreementReport, OracleReport


FORMAT_TEXT = "text"
FORMAT_STRUCTURED = "structured"
FORMATS = (FORMAT_TEXT, FORMAT_STRUCTURED)


class RunManifest(Serializer):
    """Everything needed to reproduce a run."""

    def __init__(
        self,
        subcommand: str,
        seed: int,
        output_format: str = FORMAT_TEXT,
        jobs: int = 1,
        trials: int | None = None,
        bound: int | None = None,
        saturate: bool = False,
        files: dict | None = None,
    ):
        self.subcommand = subcommand
        self.seed = seed
        self.output_format = output_format
        self.jobs = jobs
        self.trials = trials
        self.bound = bound
        self.saturate = saturate
        self.files = files or {}
        self.version = __version__

    def header(self) -> str:
        lines = [
            f"chowcheck v{self.version}: {self.subcommand}",
            f"seed {self.seed}, trials {self.trials}, bound {self.bound}, jobs {self.jobs}"
            + (", saturated" if self.saturate else ""),
        ]
        lines.extend(f"  {name}  {digest[:16]}" for name, digest in self.files.items())
        return "\n".join(lines)


def _verdict(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def cotangent_text(report: CotangentReport) -> str:
    head = f"{report.case_name}: corank {report.corank}"
    if report.expected_corank is not None:
        head += f" (expected {report.expected_corank})"
    lines = [f"{head}  {_verdict(report.passed)}"]
    if report.error:
        lines.append(f"  error: {report.error}")
        return "\n".join(lines)
    lines.append(
        f"  differentials {report.n_differentials}, rank {report.rank}, "
        f"sampled ranks {' '.join(map(str, report.sampled_ranks))}"
    )
    spanning = ", ".join(f"d{name}" for name in report.spanning)
    if report.expected_spanning:
        spanning += f"  ({'matches' if report.span_ok else 'differs from'} the expected set)"
    lines.append(f"  spanning {spanning}")
    if report.added_relations:
        lines.append(f"  saturation added {report.added_relations} relations")
    for definition in report.definitions:
        lines.append(f"  constraint {definition}")
    return "\n".join(lines)


def facts_text(report: FactsReport) -> str:
    lines = [
        f"{report.case_name}: {len(report.results) - len(report.failures)}"
        f"/{len(report.results)} facts  {_verdict(report.passed)}"
    ]
    for result in report.failures:
        observed = result.error or f"observed {result.observed}"
        lines.append(f"  {result.fact}: {observed}")
    return "\n".join(lines)


def oracle_text(report: OracleReport) -> str:
    text = (
        f"{report.name}: {report.equal} equal, {report.unequal} unequal, "
        f"{report.incomparable} incomparable"
    )
    if report.rejected:
        text += f", {report.rejected} rejected"
    text += f"  {_verdict(report.passed)}"
    if report.counterexample:
        text += f"\n  counterexample: {report.counterexample}"
    return text


def agreement_text(report: AgreementReport) -> str:
    lines = [
        f"{report.case_name}: {report.checked} checks, {report.failures} failures, "
        f"{len(report.unresolved)} unresolved  {_verdict(report.passed)}"
    ]
    for relation in report.relations.values():
        if relation.unequal:
            lines.append(f"  {relation.name}: {relation.counterexample}")
    return "\n".join(lines)


def homology_text(report: HomologyReport) -> str:
    return (
        f"pattern {report.pattern}: coefficient 1 in {report.ones}/{report.trials} "
        f"trials, {report.zeros} singular, {report.violations} violations, "
        f"rejection rate {report.rejection_rate:.2%}  {_verdict(report.passed)}"
    )


TEXT_RENDERERS = {
    CotangentReport: cotangent_text,
    FactsReport: facts_text,
    OracleReport: oracle_text,
    AgreementReport: agreement_text,
    HomologyReport: homology_text,
}


def render_text(manifest: RunManifest, reports: list) -> str:
    lines = [manifest.header(), ""]
    lines.extend(TEXT_RENDERERS[type(report)](report) for report in reports)
    passed = sum(report.passed for report in reports)
    lines.append("")
    lines.append(f"{passed}/{len(reports)} checks passed")
    return "\n".join(lines)


def render_structured(manifest: RunManifest, reports: list) -> str:
    document = {
        "manifest": manifest.serialize(),
        "passed": all_passed(reports),
        "reports": [report.serialize() for report in reports],
    }
    return json.dumps(document, indent=2, default=str)


def render(manifest: RunManifest, reports: list) -> str:
    if manifest.output_format == FORMAT_STRUCTURED:
        return render_structured(manifest, reports)
    return render_text(manifest, reports)


def report_label(report) -> str:
    """The name under which a failing report is announced."""
    if isinstance(report, HomologyReport):
        return f"homology pattern {report.pattern}"
    if isinstance(report, OracleReport):
        return report.name
    return report.case_name


def all_passed(reports: list) -> bool:
    return all(report.passed for report in reports)


def exit_status(reports: list) -> int:
    """0 if every report passed, else 1."""
    return 0 if all_passed(reports) else 1
