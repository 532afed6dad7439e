"""
Exact linear algebra for the verifiers.

Fraction-free Gaussian elimination over a polynomial ring (rank over
its fraction field, with a ledger of the pivots used) and dense
rank, kernel and determinant over QQ through sympy's DomainMatrix.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

from typing import Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .logger import chowlogger
from .poly import evaluate, primitive_row, total_degree


__all__ = [
    'PivotRecord',
    'Elimination',
    'eliminate',
    'evaluate_rows',
    'qq_rank',
    'qq_nullspace',
    'qq_det',
]


class PivotRecord:
    """
    A pivot of the elimination: the column it eliminates, the index of
    the input row it came from and the pivot polynomial. `sample` and
    `value` are filled in when the pivot gets certified.
    """

    def __init__(self, column: str, row: int, polynomial):
        self.column = column
        self.row = row
        self.polynomial = polynomial
        self.sample = None
        self.value = None

    def __repr__(self):
        return f"PivotRecord({self.column}, row={self.row}, {self.polynomial})"

    @property
    def is_certified(self) -> bool:
        return self.value is not None and bool(self.value)


class Elimination:
    """Outcome of `eliminate`: pivots in elimination order and free columns."""

    def __init__(self, columns: list[str], pivots: list[PivotRecord], echelon: list):
        self.columns = columns
        self.pivots = pivots
        self.echelon = echelon

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def corank(self) -> int:
        return len(self.columns) - self.rank

    @property
    def free_columns(self) -> list[str]:
        used = {p.column for p in self.pivots}
        return [c for c in self.columns if c not in used]


def _pivot_key(entry, index):
    # smallest total degree first, then fewest terms, then input order
    return (total_degree(entry), len(entry), index)


def eliminate(rows: Sequence[Sequence], columns: Sequence[str]) -> Elimination:
    """
    Fraction-free row reduction of `rows` (lists of polynomials of one
    ring, one entry per column) into echelon form. Columns are visited
    in the given order. A row update is row = pivot * row - value * pivot_row
    followed by division by the content of the row, so entries stay
    polynomials of moderate size.
    """
    columns = list(columns)
    work = [list(row) for row in rows]
    unused = list(range(len(work)))
    pivots = []
    echelon = []
    for j, column in enumerate(columns):
        candidates = [i for i in unused if work[i][j]]
        if not candidates:
            continue
        k = min(candidates, key=lambda i: _pivot_key(work[i][j], i))
        unused.remove(k)
        pivot_row = work[k]
        pivot = pivot_row[j]
        chowlogger.debug(f"pivot for d{column}: row {k}, {pivot}")
        pivots.append(PivotRecord(column, k, pivot))
        echelon.append(pivot_row)
        for i in unused:
            value = work[i][j]
            if not value:
                continue
            row = work[i]
            work[i] = primitive_row(
                [pivot * a - value * b for a, b in zip(row, pivot_row)]
            )
    return Elimination(columns, pivots, echelon)


def evaluate_rows(rows: Sequence[Sequence], assignment: Mapping) -> list[list]:
    """Evaluates a matrix of polynomials at a full assignment over QQ."""
    return [[evaluate(entry, assignment) for entry in row] for row in rows]


def _domain_matrix(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    data = [[QQ.convert(entry) for entry in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def qq_rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows or not ncols:
        return 0
    return _domain_matrix(rows, ncols).rank()


def qq_nullspace(rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of the right kernel as a list of vectors over QQ."""
    if not rows:
        return [[QQ.one if i == j else QQ.zero for i in range(ncols)] for j in range(ncols)]
    kernel = _domain_matrix(rows, ncols).nullspace()
    return [list(vector) for vector in kernel.to_list()]


def qq_det(rows: Sequence[Sequence]):
    return _domain_matrix(rows, len(rows)).det()
