"""
Randomized exact oracles.

All draws are rationals with bounded numerators and denominators from
`random.Random` generators seeded per purpose, so that a report is a
pure function of the seed. Every comparison is exact: a single
disagreement is a failure.

- `validate_formula` compares an invariant evaluated on sampled
  coordinates with a claimed closed form.
- `cross_chart_agreement` samples one chart, solves the relations for
  the variables of the other charts where they are triangular and
  compares both sides of every determined relation.
- `identity_suite` runs the product identities of cross-ratios, the
  route coherence checks of cross- and triple ratios and the Ceva and
  Menelaus configurations on random configurations.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

import random

from sympy import QQ

from ..core.exceptions import (
    ChowCheckError,
    GeometryError,
    UnresolvableRelationError,
    error_code,
)
from ..core.geometry import (
    ProjLine,
    ProjPoint,
    dot,
    generic_position,
    join,
    meet,
    normalize_frame,
)
from ..core.invariants import (
    Configuration,
    CrossRatioSpec,
    TripleRatioSpec,
    ceva_ratio,
    check_identity_1,
    check_identity_2,
    cross_ratio_collinear,
    cross_ratio_pencil,
    evaluate_invariant,
    triple_ratio_cevian,
    triple_ratio_menelaus,
)
from ..core.logger import case_logger, chowlogger
from ..core.poly import ChartRing, evaluate, poly_eval_partial
from ..core.scalar import ONE, Comparison, ExtScalar, ext_eq
from ..core.utils import Serializer
from .charts import VarClass, cleared_relation, draw_point, draw_rational, draw_value


DEFAULT_SEED = 20240229
DEFAULT_TRIALS = 100
DEFAULT_BOUND = 97
DEFAULT_RETRIES = 32


class SampleConfig:
    """
    Seed, number of trials and magnitude bound of the sampled rationals.
    Identical configurations give identical draws.
    """

    def __init__(
        self,
        seed: int = DEFAULT_SEED,
        trials: int = DEFAULT_TRIALS,
        bound: int = DEFAULT_BOUND,
        retries: int = DEFAULT_RETRIES,
    ):
        if trials < 1 or bound < 2 or retries < 1:
            raise ValueError("trials, bound and retries have to be positive (bound >= 2)")
        self.seed = seed
        self.trials = trials
        self.bound = bound
        self.retries = retries

    def __repr__(self):
        return f"SampleConfig(seed={self.seed}, trials={self.trials}, bound={self.bound})"

    def rng(self, label: str) -> random.Random:
        """A generator for one purpose, independent of all other labels."""
        return random.Random(f"{self.seed}:{label}")


def _assignment_text(case, assignment) -> str:
    ring = case.chart_ring
    return ", ".join(
        f"{name}={assignment[ring.gen(name)]}"
        for name in case.variables if ring.gen(name) in assignment
    )


def _draw(var_class, rng, cfg):
    if not var_class.is_parameter:
        var_class = VarClass.NONZERO
    return draw_value(var_class, rng, cfg.bound, cfg.retries)


class OracleReport(Serializer):
    """
    Counts of an oracle run: trials with equal values, unequal values
    (failures) and incomparable ones (a value was undefined), and the
    first counterexample.
    """

    def __init__(self, name: str):
        self.name = name
        self.equal = 0
        self.unequal = 0
        self.incomparable = 0
        self.rejected = 0
        self.counterexample = ""

    def record(self, outcome: Comparison, detail=""):
        if outcome is Comparison.EQUAL:
            self.equal += 1
        elif outcome is Comparison.UNEQUAL:
            self.unequal += 1
            if not self.counterexample:
                self.counterexample = detail() if callable(detail) else detail
        else:
            self.incomparable += 1

    @property
    def trials(self) -> int:
        return self.equal + self.unequal + self.incomparable

    @property
    def passed(self) -> bool:
        return self.unequal == 0 and self.equal > 0

    def serialize(self, exclude=None):
        data = super().serialize(exclude)
        data["passed"] = self.passed
        return data


def validate_formula(case, formula, cfg: SampleConfig) -> OracleReport:
    """
    Compares the invariant of a formula line, evaluated on the chart
    at sampled coordinates, with the claimed closed form.
    """
    chart = case.chart(formula.chart_id)
    ring = case.chart_ring
    report = OracleReport(f"{case.name} {formula}")
    rng = cfg.rng(f"formula:{case.name}:{formula}")
    for _ in range(cfg.trials):
        assignment = {
            ring.gen(name): _draw(var_class, rng, cfg)
            for name, var_class in chart.variables.items()
        }
        try:
            config = chart.configuration().map(lambda c: evaluate(c, assignment))
            value = evaluate_invariant(formula.spec, config).to_ext()
        except GeometryError:
            report.rejected += 1
            continue
        expected = ExtScalar(
            evaluate(formula.expected.num, assignment),
            evaluate(formula.expected.den, assignment),
        )
        report.record(
            ext_eq(value, expected),
            lambda: f"{value} != {expected} at {_assignment_text(case, assignment)}",
        )
    if not report.passed:
        chowlogger.info(f"formula {report.name} failed: {report.counterexample}")
    return report


def validate_case_formulas(case, cfg: SampleConfig) -> list[OracleReport]:
    return [validate_formula(case, formula, cfg) for formula in case.formulas]


class AgreementReport(Serializer):
    """
    Per relation: trials where both sides agreed, disagreed or could
    not be compared, and the relations the solve never determined.
    """

    def __init__(self, case_name: str, relations: list[str]):
        self.case_name = case_name
        self.relations = {text: OracleReport(text) for text in relations}
        self.unresolved = []
        self.skipped = []

    @property
    def checked(self) -> int:
        return sum(r.equal for r in self.relations.values())

    @property
    def failures(self) -> int:
        return sum(r.unequal for r in self.relations.values())

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def serialize(self, exclude=None):
        return {
            "case": self.case_name,
            "checked": self.checked,
            "failures": self.failures,
            "passed": self.passed,
            "unresolved": self.unresolved,
            "skipped": self.skipped,
            "relations": [r.serialize() for r in self.relations.values() if r.trials],
        }


def _solve_step(polynomials: dict, assignment: dict, ring: ChartRing, done: set) -> bool:
    """
    Assigns the unknown of every open relation that is linear in a
    single unknown. Returns True on progress.
    """
    progress = False
    for key, polynomial in polynomials.items():
        if key in done:
            continue
        reduced = poly_eval_partial(polynomial, assignment)
        unknowns = ring.variables_of(reduced)
        if not unknowns:
            done.add(key)
            progress = True
            continue
        if len(unknowns) != 1:
            continue
        gen = ring.gen(unknowns[0])
        if reduced.degree(gen) != 1:
            continue
        slope = evaluate(reduced.diff(gen), {})
        if not slope:
            continue
        constant = evaluate(poly_eval_partial(reduced, {gen: 0}), {})
        assignment[gen] = -constant / slope
        chowlogger.debug(f"solved {unknowns[0]} = {assignment[gen]} from {key}")
        done.add(key)
        progress = True
    return progress


def _relation_sides(text: str, sides: tuple, assignment: dict, solved: bool) -> tuple:
    """
    Both sides of a relation at the assignment. Raises
    UnresolvableRelationError if the solve left a variable open.
    """
    if not solved:
        raise UnresolvableRelationError(f"relation {text} not resolved by the triangular solve")
    left, right = sides
    try:
        return left.at(assignment), right.at(assignment)
    except ValueError as err:
        raise UnresolvableRelationError(f"relation {text}: {err}") from None


def cross_chart_agreement(case, cfg: SampleConfig) -> AgreementReport:
    """
    Samples the variables of the first chart, solves the relations
    that are linear in a single unknown until nothing changes, then
    compares both sides of every determined relation exactly.
    Relations never determined are listed as unresolved.
    """
    ring = case.chart_ring
    first = next(iter(case.charts.values()))
    texts = [str(relation) for relation in case.relations]
    report = AgreementReport(case.name, texts)
    polynomials, values = {}, {}
    for relation, text in zip(case.relations, texts):
        try:
            polynomial = cleared_relation(case, relation)
        except ChowCheckError as err:
            report.skipped.append(f"{text}: {error_code(err)}")
            continue
        if polynomial is None:
            report.skipped.append(f"{text}: undefined side")
            continue
        polynomials[text] = polynomial
        values[text] = (case.side_value(relation.lhs), case.side_value(relation.rhs))
    rng = cfg.rng(f"agreement:{case.name}")
    unresolved = {}
    for _ in range(cfg.trials):
        assignment = {
            ring.gen(name): _draw(var_class, rng, cfg)
            for name, var_class in first.variables.items()
        }
        done = set()
        while _solve_step(polynomials, assignment, ring, done):
            pass
        for text in polynomials:
            try:
                a, b = _relation_sides(text, values[text], assignment, text in done)
            except UnresolvableRelationError as err:
                unresolved.setdefault(text, err)
                continue
            report.relations[text].record(
                ext_eq(a, b),
                lambda: f"{a} != {b} at {_assignment_text(case, assignment)}",
            )
    report.unresolved = [text for text in texts if text in unresolved]
    for text in report.unresolved:
        err = unresolved[text]
        case_logger(case.name).warning(f"{error_code(err)}: {err}")
    return report


# identity suites

def _generic_points(rng, cfg, count, report) -> list[ProjPoint]:
    while True:
        points = [draw_point(rng, cfg.bound) for _ in range(count)]
        if generic_position(points).is_generic:
            return points
        report.rejected += 1


def _identity_1(rng, cfg, report):
    points = _generic_points(rng, cfg, 5, report)
    report.record(check_identity_1(*points), lambda: f"points {list(map(str, points))}")


def _identity_2(rng, cfg, report):
    points = _generic_points(rng, cfg, 6, report)
    report.record(check_identity_2(*points), lambda: f"points {list(map(str, points))}")


def _cross_ratio_routes(rng, cfg, report):
    p, q, center = _generic_points(rng, cfg, 3, report)
    on_line = []
    for _ in range(4):
        s, t = draw_rational(rng, cfg.bound), draw_rational(rng, cfg.bound)
        if not (s or t):
            s = QQ.one
        on_line.append(ProjPoint(*(s * a + t * b for a, b in zip(p, q))))
    labels = dict(zip("ABCD", on_line), E=center)
    pencil = cross_ratio_pencil(CrossRatioSpec("A", "B", "C", "D", "E"), Configuration(labels))
    collinear = cross_ratio_collinear(*on_line)
    a, b = pencil.to_ext(), collinear.to_ext()
    report.record(ext_eq(a, b), lambda: f"{a} != {b} for {list(map(str, on_line))} from {center}")


def _triple_ratio_routes(rng, cfg, report):
    points = _generic_points(rng, cfg, 6, report)
    transversal = ProjLine(*draw_point(rng, cfg.bound))
    config = Configuration(dict(zip("ABCPQR", points)))
    spec = TripleRatioSpec("ABC", "PQR")
    try:
        menelaus = triple_ratio_menelaus(spec, transversal, config)
    except GeometryError:
        report.rejected += 1
        return
    a = triple_ratio_cevian(spec, config).to_ext()
    b = menelaus.to_ext()
    report.record(ext_eq(a, b), lambda: f"{a} != {b} for {list(map(str, points))}")


def _ceva(rng, cfg, report):
    a, b, c, o = _generic_points(rng, cfg, 4, report)
    d = meet(join(a, o), join(b, c))
    e = meet(join(b, o), join(c, a))
    f = meet(join(c, o), join(a, b))
    ratio = ceva_ratio(a, b, c, d, e, f).to_ext()
    config = Configuration(dict(zip("ABCDEF", (a, b, c, d, e, f))))
    triple = triple_ratio_cevian(TripleRatioSpec("ABC", "DEF"), config).to_ext()
    outcome = ext_eq(ratio, ONE)
    if outcome is Comparison.EQUAL:
        outcome = ext_eq(triple, ONE)
    report.record(outcome, lambda: f"ceva {ratio}, triple ratio {triple} for {a}, {b}, {c}, {o}")


def _menelaus(rng, cfg, report):
    a, b, c = _generic_points(rng, cfg, 3, report)
    transversal = ProjLine(*draw_point(rng, cfg.bound))
    if not all(dot(transversal, p) for p in (a, b, c)):
        report.rejected += 1
        return
    d = meet(transversal, join(b, c))
    e = meet(transversal, join(c, a))
    f = meet(transversal, join(a, b))
    ratio = ceva_ratio(a, b, c, d, e, f).to_ext()
    report.record(ext_eq(ratio, ExtScalar(-1)), lambda: f"{ratio} for {a}, {b}, {c}, {transversal}")


def _projective_invariance(rng, cfg, report):
    points = _generic_points(rng, cfg, 10, report)
    frame, rest = points[:4], points[4:]
    matrix = normalize_frame(*frame)
    a, b, c, e, f = rest[:5]
    # D sits at the center, its line to E is declared
    pencils = [
        (CrossRatioSpec("A", "B", "C", "D", "E"), Configuration(dict(zip("ABCDE", rest)))),
        (
            CrossRatioSpec("A", "B", "C", "D", "E"),
            Configuration({"A": a, "B": b, "C": c, "D": e, "E": e}, {("D", "E"): join(e, f)}),
        ),
        (TripleRatioSpec("ABC", "PQR"), Configuration(dict(zip("ABCPQR", rest)))),
    ]
    for spec, config in pencils:
        before = evaluate_invariant(spec, config).to_ext()
        after = evaluate_invariant(spec, config.transform(matrix)).to_ext()
        outcome = ext_eq(before, after)
        if outcome is not Comparison.EQUAL:
            break
    report.record(outcome, lambda: f"{spec}: {before} != {after} under {matrix}")


def coordinate_example() -> OracleReport:
    """
    [A,B;P,D]_C = y/x for the standard frame A, B, C, D and a general
    point P = (x : y : z), checked symbolically.
    """
    ring = ChartRing(["x_1", "y_1", "z_1"])
    x, y, z = (ring.gen(n) for n in ring.names)
    one, zero = ring.one, ring.zero
    config = Configuration({
        "A": ProjPoint(one, zero, zero),
        "B": ProjPoint(zero, one, zero),
        "C": ProjPoint(zero, zero, one),
        "D": ProjPoint(one, one, one),
        "P": ProjPoint(x, y, z),
    })
    value = cross_ratio_pencil(CrossRatioSpec("A", "B", "P", "D", "C"), config)
    report = OracleReport("coordinate example")
    outcome = Comparison.EQUAL if not (value.num * x - y * value.den) else Comparison.UNEQUAL
    report.record(outcome, f"({value.num})/({value.den}) != y/x")
    return report


IDENTITY_SUITES = {
    "identity-1": _identity_1,
    "identity-2": _identity_2,
    "cross-ratio-routes": _cross_ratio_routes,
    "triple-ratio-routes": _triple_ratio_routes,
    "ceva": _ceva,
    "menelaus": _menelaus,
    "projective-invariance": _projective_invariance,
}


def identity_suite(kind: str, cfg: SampleConfig) -> OracleReport:
    """Runs `cfg.trials` random configurations of one suite."""
    try:
        trial = IDENTITY_SUITES[kind]
    except KeyError:
        raise ValueError(f"unknown identity suite '{kind}'") from None
    rng = cfg.rng(f"identity:{kind}")
    report = OracleReport(kind)
    for _ in range(cfg.trials):
        trial(rng, cfg, report)
    return report


def identity_suites(cfg: SampleConfig) -> list[OracleReport]:
    """All identity suites plus the symbolic coordinate example."""
    reports = [identity_suite(kind, cfg) for kind in IDENTITY_SUITES]
    reports.append(coordinate_example())
    return reports
