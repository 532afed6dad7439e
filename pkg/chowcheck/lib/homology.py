"""
Coefficient check for the homology class of the transport locus.

A projective transformation M of the plane is constrained by point
conditions (M maps a source point p to a target point q, two linear
equations in the nine entries of M) and line conditions (M maps p onto
a target line l, one equation <l, M p> = 0). Eight equations leave a
kernel that is generically one-dimensional. The coefficient of a
condition pattern is 1 when this kernel is spanned by an invertible
matrix, so exactly one projective transformation meets the conditions.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

from ..core.exceptions import (
    NonGenericDataError,
    PatternMismatchError,
    SampleRejectedError,
)
from ..core.geometry import ProjLine, ProjPoint, cross, dot
from ..core.linalg import qq_det, qq_nullspace, qq_rank
from ..core.logger import chowlogger
from ..core.utils import Serializer
from .charts import draw_point
from .sampler import SampleConfig


CONDITIONS = 8
ENTRIES = 9


class ConditionPattern:
    """
    Number of point conditions (`beta`) and line conditions (`alpha`)
    with 2 * beta + alpha == 8.
    """

    def __init__(self, beta: int, alpha: int):
        if beta < 0 or alpha < 0 or 2 * beta + alpha != CONDITIONS:
            raise PatternMismatchError(
                f"{beta} point and {alpha} line conditions do not give "
                f"{CONDITIONS} equations"
            )
        self.beta = beta
        self.alpha = alpha

    def __eq__(self, other):
        if not isinstance(other, ConditionPattern):
            return NotImplemented
        return (self.beta, self.alpha) == (other.beta, other.alpha)

    def __hash__(self):
        return hash((self.beta, self.alpha))

    def __repr__(self):
        return f"ConditionPattern(beta={self.beta}, alpha={self.alpha})"

    def __str__(self):
        return f"{self.beta}b{self.alpha}a"

    @classmethod
    def from_text(cls, text: str) -> ConditionPattern:
        """Parses the printed form "<beta>b<alpha>a", e.g. "3b2a"."""
        beta, _, alpha = text.rstrip("a").partition("b")
        try:
            return cls(int(beta), int(alpha))
        except ValueError:
            raise PatternMismatchError(f"invalid pattern '{text}'") from None


PATTERNS = [ConditionPattern(beta, CONDITIONS - 2 * beta) for beta in (4, 3, 2, 1, 0)]


class TransportProblem:
    """
    Point conditions as (source, target point) pairs and line
    conditions as (source, target line) pairs over QQ. Raises
    PatternMismatchError if the counts do not give eight equations.
    """

    def __init__(self, point_conditions: list, line_conditions: list):
        self.pattern = ConditionPattern(len(point_conditions), len(line_conditions))
        self.point_conditions = [(ProjPoint(*p), ProjPoint(*q)) for p, q in point_conditions]
        self.line_conditions = [(ProjPoint(*p), ProjLine(*l)) for p, l in line_conditions]

    def __repr__(self):
        return f"TransportProblem({self.pattern})"


def _entry(row: int, column: int) -> int:
    return 3 * row + column


def build_system(problem: TransportProblem) -> list[list]:
    """
    The 8 x 9 coefficient matrix in the row-major entries of M. A point
    condition p -> q contributes q_k (Mp)_i - q_i (Mp)_k = 0 for the two
    indices i != k of a nonzero coordinate q_k; a line condition p -> l
    contributes <l, Mp> = 0.
    """
    rows = []
    for p, q in problem.point_conditions:
        k = next(index for index in range(3) if q[index])
        for i in range(3):
            if i == k:
                continue
            row = [0] * ENTRIES
            for j in range(3):
                row[_entry(i, j)] += q[k] * p[j]
                row[_entry(k, j)] -= q[i] * p[j]
            rows.append(row)
    for p, line in problem.line_conditions:
        row = [0] * ENTRIES
        for i in range(3):
            for j in range(3):
                row[_entry(i, j)] = line[i] * p[j]
        rows.append(row)
    return rows


def _image(matrix, point) -> tuple:
    # M p as a plain triple, possibly zero
    return tuple(dot(row, point) for row in matrix)


def as_matrix(vector) -> tuple:
    return tuple(tuple(vector[_entry(i, j)] for j in range(3)) for i in range(3))


def satisfies(problem: TransportProblem, matrix) -> bool:
    """True if `matrix` meets every condition of the problem exactly."""
    for p, q in problem.point_conditions:
        if any(cross(_image(matrix, p), q)):
            return False
    return all(
        not dot(line, _image(matrix, p))
        for p, line in problem.line_conditions
    )


def solve_transport(problem: TransportProblem):
    """
    The generator of the kernel of the system as a 3x3 matrix. Raises
    NonGenericDataError if the system has rank less than eight.
    """
    rows = build_system(problem)
    rank = qq_rank(rows, ENTRIES)
    if rank < CONDITIONS:
        raise NonGenericDataError(
            f"pattern {problem.pattern}: system has rank {rank} < {CONDITIONS}"
        )
    (generator,) = qq_nullspace(rows, ENTRIES)
    return as_matrix(generator)


def coefficient(problem: TransportProblem) -> int:
    """
    1 if the conditions are met by a unique projective transformation,
    0 if the only solution is a singular matrix.
    """
    matrix = solve_transport(problem)
    return 1 if qq_det([list(row) for row in matrix]) else 0


def random_problem(pattern: ConditionPattern, rng, bound: int) -> TransportProblem:
    """Independently drawn sources, target points and target lines."""
    return TransportProblem(
        [(draw_point(rng, bound), draw_point(rng, bound)) for _ in range(pattern.beta)],
        [(draw_point(rng, bound), draw_point(rng, bound)) for _ in range(pattern.alpha)],
    )


def singular_problem(rng, bound: int) -> TransportProblem:
    """
    Eight line conditions all met by a fixed rank two matrix M0: the
    target line of p is M0 p joined with a random point. Generic draws
    leave M0 as the only solution, so the coefficient is 0.
    """
    rows = [draw_point(rng, bound) for _ in range(2)]
    singular = (tuple(rows[0]), tuple(rows[1]), tuple(a + b for a, b in zip(*rows)))
    conditions = []
    while len(conditions) < CONDITIONS:
        p = draw_point(rng, bound)
        line = cross(_image(singular, p), draw_point(rng, bound))
        if any(line):
            conditions.append((p, line))
    return TransportProblem([], conditions)


class HomologyReport(Serializer):
    """Outcome of the random trials of one pattern."""

    def __init__(self, pattern: str):
        self.pattern = pattern
        self.trials = 0
        self.ones = 0
        self.zeros = 0
        self.rejected = 0
        self.violations = 0

    @property
    def rejection_rate(self) -> float:
        drawn = self.trials + self.rejected
        return self.rejected / drawn if drawn else 0.0

    @property
    def passed(self) -> bool:
        return self.trials > 0 and self.ones == self.trials and not self.violations

    def serialize(self, exclude=None):
        data = super().serialize(exclude)
        data["rejection_rate"] = round(self.rejection_rate, 4)
        data["passed"] = self.passed
        return data


def homology_trials(pattern: ConditionPattern, cfg: SampleConfig) -> HomologyReport:
    """
    Runs `cfg.trials` generic instances of the pattern. Non-generic
    draws (rank below eight) are redrawn and counted; more than
    `cfg.retries` of them in a row raise SampleRejectedError.
    """
    rng = cfg.rng(f"homology:{pattern}")
    report = HomologyReport(str(pattern))
    for _ in range(cfg.trials):
        for _ in range(cfg.retries):
            problem = random_problem(pattern, rng, cfg.bound)
            try:
                matrix = solve_transport(problem)
            except NonGenericDataError:
                report.rejected += 1
                continue
            break
        else:
            raise SampleRejectedError(
                f"pattern {pattern}: no generic instance in {cfg.retries} draws"
            )
        report.trials += 1
        if not satisfies(problem, matrix):
            report.violations += 1
            chowlogger.warning(f"pattern {pattern}: kernel generator {matrix} violates a condition")
        if qq_det([list(row) for row in matrix]):
            report.ones += 1
        else:
            report.zeros += 1
    chowlogger.info(
        f"homology {pattern}: {report.ones}/{report.trials} with coefficient 1, "
        f"{report.rejected} rejected"
    )
    return report


def all_homology_trials(cfg: SampleConfig) -> list[HomologyReport]:
    return [homology_trials(pattern, cfg) for pattern in PATTERNS]
