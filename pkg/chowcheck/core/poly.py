"""
Polynomials and rational functions over QQ in named chart variables.

The arithmetic itself is sympy's sparse `PolyElement`; this module adds
the chart-variable naming, the case-file expression grammar, rational
functions with in-band cancellation, substitution of solved parameters
and the linearization at the base point (all infinitesimal variables
set to zero) that turns a cleared relation into a row of differentials.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

import re
from functools import reduce
from typing import Iterable, Mapping

from sympy import QQ
from sympy.polys.monomials import monomial_div, monomial_min
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .exceptions import (
    CaseParseError,
    CaseValidationError,
    ConstantNonvanishingError,
)


__all__ = [
    'VarName',
    'ChartRing',
    'RatFunc',
    'Definitions',
    'LinearForm',
    'to_qq',
    'poly_eval_partial',
    'evaluate',
    'base_value',
    'substitute_fraction',
    'linearize_at_base',
    'ratfunc_equal',
    'total_degree',
    'primitive_row',
    'monomial_content',
]


VARNAME_PATTERN = re.compile(r"^(?P<base>[xyzt])_(?P<chart>\d+)$")
TOKEN_PATTERN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[a-z]_\d+)|(?P<op>[-+*/()]))")


class VarName:
    """
    A chart variable: one of x, y, z, t with the chart id as subscript,
    printed as "x_1".
    """

    __slots__ = ("chart_id", "base_name")

    def __init__(self, chart_id: int, base_name: str):
        if base_name not in "xyzt" or len(base_name) != 1:
            raise ValueError(f"invalid variable base name '{base_name}'")
        self.chart_id = int(chart_id)
        self.base_name = base_name

    @classmethod
    def from_text(cls, text: str) -> VarName:
        mo = VARNAME_PATTERN.match(text.strip())
        if not mo:
            raise ValueError(f"invalid variable name '{text}'")
        return cls(int(mo.group("chart")), mo.group("base"))

    def __eq__(self, other):
        if not isinstance(other, VarName):
            return NotImplemented
        return (self.chart_id, self.base_name) == (other.chart_id, other.base_name)

    def __hash__(self):
        return hash((self.chart_id, self.base_name))

    def __repr__(self):
        return f"VarName({self.chart_id}, '{self.base_name}')"

    def __str__(self):
        return f"{self.base_name}_{self.chart_id}"


def to_qq(value):
    """Converts an int, Fraction or QQ element to a QQ element."""
    if isinstance(value, int):
        return QQ(value)
    return QQ(int(value.numerator), int(value.denominator))


class ChartRing:
    """
    The polynomial ring QQ[v_1, ..., v_n] over all variables of a case
    in declaration order, with graded lexicographic term order. Provides
    parsing and printing of the case-file expression grammar.
    """

    def __init__(self, names: Iterable[str | VarName]):
        self.names = [str(name) for name in names]
        if len(set(self.names)) != len(self.names):
            raise CaseValidationError("variable declared twice")
        for name in self.names:
            VarName.from_text(name)
        # a ring needs one generator, "_" stands in for a case without variables
        self.ring = PolyRing(self.names or ["_"], QQ, grlex)
        self.gens = self.ring.gens[:len(self.names)]
        self.index = {name: i for i, name in enumerate(self.names)}

    def __repr__(self):
        return f"ChartRing({', '.join(self.names)})"

    def __eq__(self, other):
        if not isinstance(other, ChartRing):
            return NotImplemented
        return self.names == other.names

    def __hash__(self):
        return hash(tuple(self.names))

    @property
    def zero(self) -> PolyElement:
        return self.ring.zero

    @property
    def one(self) -> PolyElement:
        return self.ring.one

    def gen(self, name: str | VarName) -> PolyElement:
        try:
            return self.gens[self.index[str(name)]]
        except KeyError:
            raise CaseValidationError(f"undeclared variable '{name}'") from None

    def constant(self, value) -> PolyElement:
        return self.ring.ground_new(to_qq(value))

    def variables_of(self, poly: PolyElement) -> list[str]:
        """Names of the variables the polynomial depends on, in ring order."""
        used = set()
        for monom in poly.itermonoms():
            used.update(i for i, e in enumerate(monom) if e)
        return [self.names[i] for i in sorted(used) if i < len(self.names)]

    def parse(self, text: str) -> RatFunc:
        """
        Parses an expression of the case-file grammar: integers,
        variables like "x_1", the operators + - * / and parentheses.
        Raises CaseParseError with the column of the offending token and
        CaseValidationError on undeclared variables.
        """
        return _ExpressionParser(self, text).parse()

    def parse_poly(self, text: str) -> PolyElement:
        """Parses an expression whose denominator is a nonzero constant."""
        value = self.parse(text)
        if value.den.is_ground:
            return value.num.quo_ground(value.den.LC)
        raise CaseParseError(f"polynomial expected, got '{text.strip()}'")

    def format_poly(self, poly: PolyElement) -> str:
        """
        Canonical rendering with ascending terms, e.g. "1 - x_2*y_2".
        """
        if not poly:
            return "0"
        parts = []
        for monom, coeff in reversed(poly.terms(grlex)):
            factors = [
                name if e == 1 else "*".join([name] * e)
                for name, e in zip(self.names, monom) if e
            ]
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def format(self, value: RatFunc | PolyElement) -> str:
        if isinstance(value, PolyElement):
            return self.format_poly(value)
        num = self.format_poly(value.num)
        if value.den == self.one:
            return num
        den = self.format_poly(value.den)
        if len(value.num) > 1:
            num = f"({num})"
        if len(value.den) > 1 or "*" in den or "/" in den:
            den = f"({den})"
        return f"{num}/{den}"


class _ExpressionParser:
    """Recursive descent over the token list of one expression."""

    def __init__(self, chart_ring: ChartRing, text: str):
        self.chart_ring = chart_ring
        self.text = text
        self.tokens = []
        position = 0
        stripped_end = len(text.rstrip())
        while position < stripped_end:
            mo = TOKEN_PATTERN.match(text, position)
            if not mo or mo.end() == position:
                rest = text[position:]
                position += len(rest) - len(rest.lstrip())
                raise CaseParseError(
                    f"unexpected character '{text[position]}'",
                    column=position + 1,
                )
            kind = mo.lastgroup
            start = mo.start(kind)
            self.tokens.append((kind, mo.group(kind), start + 1))
            position = mo.end()
        self.position = 0

    def peek(self):
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return (None, None, len(self.text) + 1)

    def take(self):
        token = self.peek()
        self.position += 1
        return token

    def fail(self, message):
        raise CaseParseError(message, column=self.peek()[2])

    def parse(self) -> RatFunc:
        if not self.tokens:
            self.fail("empty expression")
        value = self.expression()
        if self.peek()[0] is not None:
            self.fail(f"unexpected '{self.peek()[1]}'")
        return value

    def expression(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            other = self.term()
            value = value + other if op == "+" else value - other
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            column = self.peek()[2]
            other = self.unary()
            if op == "*":
                value = value * other
            elif other.is_zero:
                raise CaseParseError("division by zero", column=column)
            else:
                value = value / other
        return value

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self):
        kind, value, column = self.take()
        ring = self.chart_ring
        if kind == "number":
            return RatFunc(ring.constant(int(value)), ring.one)
        if kind == "name":
            if value not in ring.index:
                raise CaseValidationError(f"undeclared variable '{value}'")
            return RatFunc(ring.gen(value), ring.one)
        if value == "(":
            inner = self.expression()
            if self.take()[1] != ")":
                self.position -= 1
                self.fail("missing ')'")
            return inner
        if kind is None:
            raise CaseParseError("unexpected end of expression", column=column)
        raise CaseParseError(f"unexpected '{value}'", column=column)


class RatFunc:
    """
    A rational function num/den over a polynomial ring. The denominator
    is never identically zero. Common factors get cancelled on creation.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PolyElement, den: PolyElement | None = None):
        if den is None:
            den = num.ring.one
        if not den:
            raise ZeroDivisionError("denominator is identically zero")
        if not num:
            self.num, self.den = num.ring.zero, num.ring.one
        else:
            self.num, self.den = num.cancel(den)

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.den, self.den * other.num)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return ratfunc_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"


def ratfunc_equal(a: RatFunc, b: RatFunc) -> bool:
    """True iff a.num * b.den - b.num * a.den is the zero polynomial."""
    return not (a.num * b.den - b.num * a.den)


def poly_eval_partial(poly: PolyElement, assignment: Mapping) -> PolyElement:
    """
    Substitutes the assigned variables (keys are generators of the ring)
    by rationals. The result stays in the same ring.
    """
    if not assignment:
        return poly
    return poly.subs([(gen, to_qq(value)) for gen, value in assignment.items()])


def evaluate(poly: PolyElement, assignment: Mapping):
    """
    Evaluates a polynomial at a full assignment and returns a QQ
    element. Raises ValueError if a used variable is not assigned.
    """
    value = poly_eval_partial(poly, assignment)
    if not value.is_ground:
        raise ValueError(f"not all variables assigned in {poly}")
    return value.get(value.ring.zero_monom, QQ.zero)


def base_value(poly: PolyElement, infinitesimals: Iterable[PolyElement]) -> PolyElement:
    """The polynomial with all infinitesimal variables set to zero."""
    return poly_eval_partial(poly, {gen: 0 for gen in infinitesimals})


def total_degree(poly: PolyElement) -> int:
    return max((sum(monom) for monom in poly.itermonoms()), default=0)


def substitute_fraction(
    poly: PolyElement,
    gen: PolyElement,
    num: PolyElement,
    den: PolyElement,
    degree: int | None = None,
) -> PolyElement:
    """
    Substitutes gen := num/den and returns the numerator of the result
    homogenized by den**degree, where degree defaults to the degree of
    poly in gen. Passing a larger degree keeps numerator and
    denominator of a fraction on the same scale.
    """
    ring = poly.ring
    i = ring.index(gen)
    if degree is None:
        degree = poly.degree(gen)
    if degree < 0:
        return poly
    pieces = {}
    for monom, coeff in poly.iterterms():
        k = monom[i]
        rest = monom[:i] + (0,) + monom[i + 1:]
        pieces.setdefault(k, {})[rest] = coeff
    result = ring.zero
    num_powers = [ring.one]
    den_powers = [ring.one]
    for _ in range(degree):
        num_powers.append(num_powers[-1] * num)
        den_powers.append(den_powers[-1] * den)
    for k, terms in pieces.items():
        result += ring.from_dict(terms) * num_powers[k] * den_powers[degree - k]
    return result


class Definitions:
    """
    Solved parameters, each as gen := num/den with num and den free of
    every defined parameter. Adding a definition back-substitutes it
    into the earlier ones.
    """

    def __init__(self, chart_ring: ChartRing):
        self.chart_ring = chart_ring
        self._items = {}

    def __contains__(self, name):
        return str(name) in self._items

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return iter(self._items.items())

    def names(self) -> list[str]:
        return list(self._items)

    def define(self, name: str, num: PolyElement, den: PolyElement):
        gen = self.chart_ring.gen(name)
        for other, (n, d) in list(self._items.items()):
            degree = max(n.degree(gen), d.degree(gen))
            if degree > 0:
                n = substitute_fraction(n, gen, num, den, degree)
                d = substitute_fraction(d, gen, num, den, degree)
                n, d = n.cancel(d)
                self._items[other] = (n, d)
        self._items[str(name)] = num.cancel(den)

    def substitute(self, poly: PolyElement) -> PolyElement:
        """
        Numerator of poly with all definitions substituted. The result
        differs from the true value by a factor that is a product of
        definition denominators (nonzero on the admissible locus).
        """
        for name, (num, den) in self._items.items():
            gen = self.chart_ring.gen(name)
            if poly.degree(gen) > 0:
                poly = substitute_fraction(poly, gen, num, den)
        return poly

    def substitute_ratfunc(self, value: RatFunc) -> RatFunc:
        num, den = value.num, value.den
        for name, (n, d) in self._items.items():
            gen = self.chart_ring.gen(name)
            degree = max(num.degree(gen), den.degree(gen))
            if degree > 0:
                num = substitute_fraction(num, gen, n, d, degree)
                den = substitute_fraction(den, gen, n, d, degree)
        return RatFunc(num, den)

    def complete(self, assignment: dict) -> dict:
        """
        Extends an assignment of the free parameters (gen -> rational)
        by the values of the defined ones. Raises ZeroDivisionError if a
        definition denominator vanishes.
        """
        result = dict(assignment)
        for name, (num, den) in self._items.items():
            d = evaluate(den, assignment)
            if not d:
                raise ZeroDivisionError(f"definition of {name} is singular")
            result[self.chart_ring.gen(name)] = evaluate(num, assignment) / d
        return result

    def as_text(self) -> list[str]:
        fmt = self.chart_ring.format
        return [
            f"{name} := {fmt(RatFunc(num, den))}"
            for name, (num, den) in self._items.items()
        ]


def primitive_row(entries: list[PolyElement]) -> list[PolyElement]:
    """
    Divides a list of polynomials by the gcd of its entries. Zero lists
    are returned unchanged.
    """
    nonzero = [p for p in entries if p]
    if not nonzero:
        return entries
    g = reduce(lambda a, b: a.gcd(b), nonzero)
    if g == g.ring.one:
        return entries
    return [p.exquo(g) if p else p for p in entries]


class LinearForm:
    """
    The linear part of a cleared relation at the base point:
    `constant_check` is the relation itself at the base point and
    `coefficients` maps variable names to the coefficient of their
    differential. Coefficients share a common nonzero scale.
    """

    def __init__(self, constant_check: PolyElement, coefficients: dict[str, PolyElement]):
        self.constant_check = constant_check
        self.coefficients = {k: v for k, v in coefficients.items() if v}

    def __repr__(self):
        terms = ", ".join(f"d{k}: {v}" for k, v in self.coefficients.items())
        return f"LinearForm({{{terms}}})"

    @property
    def is_empty(self) -> bool:
        return not self.coefficients

    def row(self, columns: list[str], ring: PolyRing) -> list[PolyElement]:
        return [self.coefficients.get(name, ring.zero) for name in columns]


def linearize_at_base(
    poly: PolyElement,
    chart_ring: ChartRing,
    infinitesimals: Iterable[str],
    parameters: Iterable[str],
    definitions: Definitions | None = None,
) -> LinearForm:
    """
    Writes the cleared relation P = 0 as
    P(base) + sum_v dP/dv(base) dv + O(2), base setting every
    infinitesimal to zero. Parameters stay symbolic; solved parameters
    are substituted after differentiation. Raises
    ConstantNonvanishingError if P(base) does not vanish identically.
    """
    infinitesimals = list(infinitesimals)
    parameters = list(parameters)
    known = set(infinitesimals) | set(parameters)
    unclassified = [n for n in chart_ring.variables_of(poly) if n not in known]
    if unclassified:
        raise CaseValidationError(
            f"unclassified variables {', '.join(unclassified)}"
        )
    inf_gens = [chart_ring.gen(name) for name in infinitesimals]
    constant = base_value(poly, inf_gens)
    if definitions is not None:
        constant = definitions.substitute(constant)
    if constant:
        raise ConstantNonvanishingError(
            f"relation does not vanish at the base point: "
            f"{chart_ring.format_poly(constant)}"
        )
    names = [n for n in chart_ring.names if n in known]
    values = []
    for name in names:
        derivative = base_value(poly.diff(chart_ring.gen(name)), inf_gens)
        value = RatFunc(derivative, chart_ring.one)
        if definitions is not None and derivative:
            value = definitions.substitute_ratfunc(value)
        values.append(value)
    common = reduce(lambda a, b: a.lcm(b), (v.den for v in values), chart_ring.one)
    entries = [v.num * common.exquo(v.den) for v in values]
    entries = primitive_row(entries)
    return LinearForm(constant, dict(zip(names, entries)))


def monomial_content(poly: PolyElement) -> tuple:
    """
    Splits off the largest monomial dividing `poly`: returns its
    exponent tuple and the quotient. Zero has content (0, ..., 0).
    """
    ring = poly.ring
    if not poly:
        return (0,) * ring.ngens, poly
    content = monomial_min(*poly.itermonoms())
    if not any(content):
        return content, poly
    quotient = ring({monomial_div(m, content): c for m, c in poly.iterterms()})
    return content, quotient
