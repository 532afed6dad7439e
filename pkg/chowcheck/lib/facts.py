"""
Symbolic check of the degeneracy facts of a case: every fact names an
invariant on a chart and the state (zero, inf, undef or nonzero) it
takes at the base point, where all infinitesimals vanish.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

from ..core.exceptions import ChowCheckError, error_code
from ..core.logger import chowlogger
from ..core.utils import Serializer
from .charts import CaseSpec, DegeneracyFact, RelationSide, base_point


class FactResult(Serializer):
    """Outcome of a single fact."""

    def __init__(self, fact: str, expected: str, observed: str, value: str = "", error: str = ""):
        self.fact = fact
        self.expected = expected
        self.observed = observed
        self.value = value
        self.error = error

    @property
    def passed(self) -> bool:
        return not self.error and self.expected == self.observed


class FactsReport(Serializer):
    def __init__(self, case_name: str, results: list[FactResult]):
        self.case_name = case_name
        self.results = results

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> list[FactResult]:
        return [result for result in self.results if not result.passed]

    def serialize(self, exclude=None):
        return {
            "case": self.case_name,
            "passed": self.passed,
            "facts": [
                dict(result.serialize(), passed=result.passed)
                for result in self.results
            ],
        }


def check_fact(case: CaseSpec, fact: DegeneracyFact) -> FactResult:
    ring = case.chart_ring
    try:
        value = case.side_value(RelationSide(fact.chart_id, fact.spec))
    except ChowCheckError as err:
        return FactResult(str(fact), str(fact.expected), "", error=f"{error_code(err)}: {err}")
    observed = base_point(value, case.infinitesimal_gens()).classify()
    text = f"({ring.format_poly(value.num)})/({ring.format_poly(value.den)})"
    return FactResult(str(fact), str(fact.expected), str(observed), text)


def check_facts(case: CaseSpec) -> FactsReport:
    """
    Evaluates every fact of the case symbolically at the base point.
    Failures are entries of the report, never exceptions.
    """
    results = [check_fact(case, fact) for fact in case.facts]
    report = FactsReport(case.name, results)
    for result in report.failures:
        chowlogger.info(
            f"{case.name}: fact {result.fact} failed, "
            f"observed {result.observed or result.error}"
        )
    return report
