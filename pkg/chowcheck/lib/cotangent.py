"""
The smoothness check of a case.

Every relation lhs == rhs is cleared to P = num_l * den_r - num_r * den_l
and linearized at the base point, where all infinitesimals vanish.
Relations that do not vanish at the base point are constraints on the
parameters and get solved first. The linearized rows form a matrix over
the polynomial ring of the parameters whose rank is computed by
fraction-free elimination. The corank is the dimension of the cotangent
space; the free columns are the surviving differentials.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

from ..core.exceptions import (
    ChowCheckError,
    ConstantNonvanishingError,
    MissingLineError,
    PivotUncertifiableError,
    error_code,
)
from ..core.linalg import Elimination, eliminate, evaluate_rows, qq_rank
from ..core.logger import case_logger
from ..core.poly import (
    Definitions,
    LinearForm,
    base_value,
    evaluate,
    linearize_at_base,
    poly_eval_partial,
)
from ..core.utils import Serializer
from .charts import (
    CaseSpec,
    cleared_relation,
    sample_admissible,
    saturate_relations,
)
from .sampler import SampleConfig


PIVOT_RETRIES = 8
RANK_SAMPLES = 3


class RelationStatus(Serializer):
    """
    What became of a relation: `status` is "row" (a nonempty row),
    "empty" (tautological at first order) or "skipped" (a side is
    undefined). `constraint` names the parameter it solved, "implied"
    or is empty.
    """

    def __init__(self, number: int, relation: str, status: str = "row", constraint: str = ""):
        self.number = number
        self.relation = relation
        self.status = status
        self.constraint = constraint


class RelationMatrix:
    """
    The linearized relations of a case: one LinearForm per kept
    relation, the columns (one differential per variable) and the
    solved parameter constraints.
    """

    def __init__(self, case: CaseSpec, columns: list[str], definitions: Definitions):
        self.case = case
        self.columns = columns
        self.definitions = definitions
        self.rows: list[LinearForm] = []
        self.row_numbers: list[int] = []
        self.statuses: list[RelationStatus] = []
        self.added_relations = 0

    @property
    def parameter_vars(self) -> list[str]:
        return self.case.parameters

    def matrix(self) -> list[list]:
        ring = self.case.chart_ring.ring
        return [form.row(self.columns, ring) for form in self.rows]


def column_order(case: CaseSpec) -> list[str]:
    """All variables in declaration order, expected spanning ones last."""
    spanning = case.expected_spanning or []
    return [v for v in case.variables if v not in spanning] + [
        v for v in case.variables if v in spanning
    ]


def _solve_constraint(case: CaseSpec, definitions: Definitions, polynomial, number, relation):
    """
    Handles a relation not vanishing at the base point. Returns the
    constraint text for the status.
    """
    ring = case.chart_ring
    reduced = definitions.substitute(polynomial)
    if not reduced:
        case_logger(case.name).debug(f"constraint of relation {number} is implied")
        return "implied"
    candidates = [
        name for name in ring.variables_of(reduced)
        if case.variable_class(name).is_parameter
        and name not in definitions
        and reduced.degree(ring.gen(name)) == 1
    ]
    if not candidates:
        raise ConstantNonvanishingError(
            f"relation {number} ({relation}) does not vanish at the base "
            f"point: {ring.format_poly(reduced)}"
        )
    name = candidates[-1]
    gen = ring.gen(name)
    constant = poly_eval_partial(reduced, {gen: 0})
    definitions.define(name, -constant, reduced.diff(gen))
    case_logger(case.name).debug(f"relation {number} solves {name}")
    return name


def build_relations(case: CaseSpec, saturate: bool = False) -> RelationMatrix:
    """
    Clears and linearizes all relations of the case (plus the
    saturation relations with `saturate`). Parameter constraints are
    solved in relation order and substituted before linearization.
    Raises MissingLineError and ConstantNonvanishingError naming the
    relation.
    """
    relations = list(case.relations)
    added = saturate_relations(case) if saturate else []
    relations.extend(added)
    inf_gens = case.infinitesimal_gens()
    definitions = Definitions(case.chart_ring)
    matrix = RelationMatrix(case, column_order(case), definitions)
    matrix.added_relations = len(added)
    cleared = []
    for number, relation in enumerate(relations, start=1):
        status = RelationStatus(number, str(relation))
        matrix.statuses.append(status)
        try:
            polynomial = cleared_relation(case, relation)
        except MissingLineError as err:
            raise MissingLineError(f"relation {number} ({relation}): {err}") from None
        if polynomial is None:
            case_logger(case.name).warning(f"relation {number} ({relation}) has an undefined side, skipped")
            status.status = "skipped"
            continue
        cleared.append((status, polynomial))
    for status, polynomial in cleared:
        base = base_value(polynomial, inf_gens)
        if base:
            status.constraint = _solve_constraint(
                case, definitions, base, status.number, status.relation
            )
    for status, polynomial in cleared:
        form = linearize_at_base(
            polynomial, case.chart_ring, case.infinitesimals, case.parameters, definitions
        )
        if form.is_empty:
            status.status = "empty"
            continue
        matrix.rows.append(form)
        matrix.row_numbers.append(status.number)
    return matrix


def certify_pivots(
    case: CaseSpec,
    elimination: Elimination,
    definitions: Definitions,
    cfg: SampleConfig,
    rng,
    retries: int = PIVOT_RETRIES,
):
    """
    Finds for every pivot an admissible sample at which it does not
    vanish. Raises PivotUncertifiableError if a pivot vanishes at
    `retries` samples.
    """
    pending = list(elimination.pivots)
    for _ in range(retries):
        if not pending:
            return
        sample = sample_admissible(case, rng, cfg.bound, cfg.retries, definitions)
        for pivot in pending:
            value = evaluate(pivot.polynomial, sample)
            if value:
                pivot.value = value
                pivot.sample = {
                    name: str(sample[case.chart_ring.gen(name)])
                    for name in case.parameters
                }
        pending = [pivot for pivot in pending if not pivot.is_certified]
    if pending:
        pivot = pending[0]
        raise PivotUncertifiableError(
            f"pivot of d{pivot.column} vanished at {retries} admissible samples: "
            f"{case.chart_ring.format_poly(pivot.polynomial)}"
        )


class CotangentReport(Serializer):
    """Result of the cotangent check of one case."""

    def __init__(self, case_name: str):
        self.case_name = case_name
        self.saturated = False
        self.n_differentials = 0
        self.rank = 0
        self.corank = None
        self.expected_corank = None
        self.spanning = []
        self.expected_spanning = None
        self.span_ok = None
        self.pivots = []
        self.sampled_ranks = []
        self.definitions = []
        self.relations = []
        self.added_relations = 0
        self.error = ""

    @classmethod
    def failure(cls, case_name: str, error: Exception) -> CotangentReport:
        report = cls(case_name)
        report.error = f"{error_code(error)}: {error}"
        return report

    @property
    def ranks_agree(self) -> bool:
        return all(rank == self.rank for rank in self.sampled_ranks)

    @property
    def passed(self) -> bool:
        if self.error or not self.ranks_agree:
            return False
        if self.expected_corank is not None and self.corank != self.expected_corank:
            return False
        return self.span_ok is not False

    def serialize(self, exclude=None):
        data = super().serialize(exclude)
        data["passed"] = self.passed
        return data


def _sampled_rank(case, rows, matrix, rank, cfg, rng) -> int:
    """
    Rank of the relation matrix at an admissible sample. A sample where
    the rank drops lies on a proper subvariety and is redrawn, at most
    `cfg.retries` times; the last rank drawn is returned.
    """
    columns = len(matrix.columns)
    for attempt in range(cfg.retries + 1):
        sample = sample_admissible(case, rng, cfg.bound, cfg.retries, matrix.definitions)
        sampled = qq_rank(evaluate_rows(rows, sample), columns)
        if sampled >= rank:
            break
        case_logger(case.name).warning(
            f"rank {sampled} below {rank} at a special sample, redrawing ({attempt + 1})"
        )
    return sampled


def corank(
    matrix: RelationMatrix,
    cfg: SampleConfig | None = None,
    pivot_retries: int = PIVOT_RETRIES,
    rank_samples: int = RANK_SAMPLES,
) -> CotangentReport:
    """
    Rank of the relation matrix over the fraction field of the
    parameters by fraction-free elimination. Every pivot is certified
    at an admissible sample and the rank is cross-checked by exact
    elimination over QQ at `rank_samples` admissible samples.
    """
    cfg = cfg or SampleConfig()
    case = matrix.case
    ring = case.chart_ring
    rng = cfg.rng(f"cotangent:{case.name}")
    rows = matrix.matrix()
    elimination = eliminate(rows, matrix.columns)
    certify_pivots(case, elimination, matrix.definitions, cfg, rng, pivot_retries)
    report = CotangentReport(case.name)
    report.n_differentials = len(matrix.columns)
    report.rank = elimination.rank
    report.corank = elimination.corank
    report.spanning = sorted(elimination.free_columns, key=case.variables.index)
    report.pivots = [
        {
            "column": pivot.column,
            "relation": matrix.row_numbers[pivot.row],
            "polynomial": ring.format_poly(pivot.polynomial),
            "sample": pivot.sample,
        }
        for pivot in elimination.pivots
    ]
    for _ in range(rank_samples):
        report.sampled_ranks.append(
            _sampled_rank(case, rows, matrix, elimination.rank, cfg, rng)
        )
    if not report.ranks_agree:
        case_logger(case.name).warning(
            f"sampled ranks {report.sampled_ranks} "
            f"differ from the elimination rank {report.rank}"
        )
    report.definitions = matrix.definitions.as_text()
    report.relations = [status.serialize() for status in matrix.statuses]
    report.added_relations = matrix.added_relations
    return report


def spans_cotangent(matrix: RelationMatrix, names: list[str], cfg: SampleConfig) -> bool:
    """
    True if the differentials `names` complete the relation rows to a
    full-rank system at an admissible sample, so that they span the
    cotangent space up to admissible row exchanges.
    """
    case = matrix.case
    rng = cfg.rng(f"span:{case.name}")
    sample = sample_admissible(case, rng, cfg.bound, cfg.retries, matrix.definitions)
    rows = evaluate_rows(matrix.matrix(), sample)
    for name in names:
        rows.append([1 if column == name else 0 for column in matrix.columns])
    return qq_rank(rows, len(matrix.columns)) == len(matrix.columns)


def verify_case(
    case: CaseSpec,
    cfg: SampleConfig | None = None,
    saturate: bool = False,
) -> CotangentReport:
    """
    Builds and ranks the relation matrix and compares with the
    expectations of the case. The spanning set is checked only without
    saturation: saturated systems may carry further constraints. It
    passes if it equals the free columns of the elimination or, failing
    that, completes the rows to full rank.
    """
    cfg = cfg or SampleConfig()
    matrix = build_relations(case, saturate=saturate)
    report = corank(matrix, cfg)
    report.saturated = saturate
    report.expected_corank = case.expected_corank
    if case.expected_spanning and not saturate:
        report.expected_spanning = list(case.expected_spanning)
        report.span_ok = set(report.spanning) == set(case.expected_spanning) or (
            len(case.expected_spanning) == report.corank
            and spans_cotangent(matrix, case.expected_spanning, cfg)
        )
    case_logger(case.name).info(
        f"corank {report.corank} "
        f"({'pass' if report.passed else 'FAIL'})"
    )
    return report


def run_verification(case: CaseSpec, cfg: SampleConfig | None = None, saturate: bool = False) -> CotangentReport:
    """Like verify_case, but errors become failing reports."""
    try:
        return verify_case(case, cfg, saturate)
    except ChowCheckError as err:
        case_logger(case.name).info(f"{error_code(err)}: {err}")
        report = CotangentReport.failure(case.name, err)
        report.expected_corank = case.expected_corank
        report.saturated = saturate
        return report


def ablate(case: CaseSpec, numbers) -> CaseSpec:
    """
    A copy of the case without the relations with the given 1-based
    numbers. Used for negative controls.
    """
    numbers = set(numbers)
    twin = CaseSpec(f"{case.name}-ablated", case.chart_ring)
    twin.__dict__.update(
        {k: v for k, v in case.__dict__.items() if k not in ("name", "relations")}
    )
    twin.relations = [
        relation for number, relation in enumerate(case.relations, start=1)
        if number not in numbers
    ]
    return twin
