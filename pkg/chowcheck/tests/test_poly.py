import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import QQ, Symbol, expand

from ..core.exceptions import (
    CaseParseError,
    CaseValidationError,
    ConstantNonvanishingError,
)
from ..core.poly import (
    ChartRing,
    Definitions,
    RatFunc,
    VarName,
    base_value,
    evaluate,
    linearize_at_base,
    monomial_content,
    poly_eval_partial,
    primitive_row,
    ratfunc_equal,
    substitute_fraction,
    total_degree,
)


@pytest.fixture
def ring():
    return ChartRing(["x_2", "y_2", "t_2"])


@pytest.mark.parametrize(
    "text, chart_id, base_name", [
        ("x_1", 1, "x"),
        ("t_12", 12, "t"),
        (" z_3 ", 3, "z"),
    ]
)
def test_varname_from_text(text, chart_id, base_name):
    name = VarName.from_text(text)
    assert (name.chart_id, name.base_name) == (chart_id, base_name)
    assert str(name) == text.strip()


@pytest.mark.parametrize("text", ["w_1", "x1", "x_", "xy_2"])
def test_varname_invalid(text):
    with pytest.raises(ValueError):
        VarName.from_text(text)


def test_ring_rejects_duplicates():
    with pytest.raises(CaseValidationError):
        ChartRing(["x_1", "x_1"])


def test_ring_without_variables():
    ring = ChartRing([])
    assert ring.parse_poly("3") == ring.constant(3)
    assert ring.variables_of(ring.one) == []


@pytest.mark.parametrize(
    "text, expected", [
        ("1 - x_2*y_2", "1 - x_2*y_2"),
        ("-y_2 + 1", "1 - y_2"),
        ("(1 + x_2)*(1 - x_2)", "1 - x_2*x_2"),
        ("2*t_2 - t_2", "t_2"),
        ("x_2/2", "1/2*x_2"),
        ("0*x_2", "0"),
    ]
)
def test_parse_and_format_poly(ring, text, expected):
    assert ring.format_poly(ring.parse_poly(text)) == expected


@pytest.mark.parametrize(
    "text, expected", [
        ("x_2*(1 - y_2)/(1 - x_2*y_2)", "(-x_2 + x_2*y_2)/(-1 + x_2*y_2)"),
        ("1/t_2", "1/t_2"),
        ("-y_2/(1 - y_2)", "y_2/(-1 + y_2)"),
        ("x_2*y_2/x_2", "y_2"),
    ]
)
def test_parse_and_format_ratfunc(ring, text, expected):
    value = ring.parse(text)
    assert ring.format(value) == expected
    assert ring.parse(ring.format(value)) == value


@pytest.mark.parametrize(
    "text, column", [
        ("1 + $", 5),
        ("(1 + x_2", 9),
        ("1 +", 4),
        ("x_2 y_2", 5),
        ("1/0", 3),
    ]
)
def test_parse_errors_carry_column(ring, text, column):
    with pytest.raises(CaseParseError) as exc:
        ring.parse(text)
    assert exc.value.column == column


def test_parse_undeclared_variable(ring):
    with pytest.raises(CaseValidationError):
        ring.parse("x_3 + 1")


def test_parse_poly_rejects_fractions(ring):
    with pytest.raises(CaseParseError):
        ring.parse_poly("1/x_2")


def test_variables_of(ring):
    assert ring.variables_of(ring.parse_poly("t_2 + x_2*x_2")) == ["x_2", "t_2"]


def test_ratfunc_cancels(ring):
    x = ring.gen("x_2")
    value = RatFunc(x * x - x, x)
    assert value.num == x - 1
    assert value.den == ring.one
    with pytest.raises(ZeroDivisionError):
        RatFunc(x, ring.zero)


def test_evaluate(ring):
    x, y, t = ring.gens
    poly = ring.parse_poly("1 - x_2*y_2 + t_2")
    assert evaluate(poly, {x: 2, y: QQ(1, 2), t: 3}) == QQ(3)
    partial = poly_eval_partial(poly, {x: 0})
    assert partial == 1 + t
    with pytest.raises(ValueError):
        evaluate(poly, {x: 1})


def test_base_value_and_degree(ring):
    x, y, t = ring.gens
    poly = ring.parse_poly("t_2 + x_2*y_2*t_2 + y_2")
    assert base_value(poly, [x, y]) == t
    assert total_degree(poly) == 3
    assert total_degree(ring.zero) == 0


def test_substitute_fraction(ring):
    x, y, t = ring.gens
    # x*x + y with x := t/(1 + y), homogenized by (1 + y)**2
    poly = x * x + y
    result = substitute_fraction(poly, x, t, 1 + y)
    assert result == t * t + y * (1 + y) ** 2


def test_definitions_back_substitute(ring):
    x, y, t = ring.gens
    definitions = Definitions(ring)
    definitions.define("x_2", t, y)
    definitions.define("y_2", t + 1, ring.one)
    assert "x_2" in definitions and "y_2" in definitions
    assert definitions.as_text() == ["x_2 := t_2/(1 + t_2)", "y_2 := 1 + t_2"]
    assert definitions.substitute(x * y - t) == ring.zero
    values = definitions.complete({t: QQ(2)})
    assert values[x] == QQ(2, 3)
    assert values[y] == QQ(3)
    with pytest.raises(ZeroDivisionError):
        definitions.complete({t: QQ(-1)})


def test_primitive_row(ring):
    x, y, t = ring.gens
    # the gcd over QQ is monic, constant content stays
    assert primitive_row([2 * x * t, 4 * x, ring.zero]) == [2 * t, 4 * ring.one, ring.zero]
    assert primitive_row([ring.zero, ring.zero]) == [ring.zero, ring.zero]


def test_linearize_at_base(ring):
    x, y, t = ring.gens
    # (1 + t) x - y + x*y at x = y = 0
    poly = (1 + t) * x - y + x * y
    form = linearize_at_base(poly, ring, ["x_2", "y_2"], ["t_2"])
    assert form.coefficients == {"x_2": 1 + t, "y_2": -ring.one}
    assert form.row(["t_2", "y_2", "x_2"], ring.ring) == [ring.zero, -ring.one, 1 + t]


def test_linearize_rejects_nonvanishing_base(ring):
    x, y, t = ring.gens
    with pytest.raises(ConstantNonvanishingError):
        linearize_at_base(x + t, ring, ["x_2", "y_2"], ["t_2"])


def test_linearize_uses_definitions(ring):
    x, y, t = ring.gens
    definitions = Definitions(ring)
    definitions.define("t_2", ring.constant(2), ring.one)
    # t*x - 2*y + (t - 2) vanishes at the base point once t = 2
    form = linearize_at_base(t * x - 2 * y + t - 2, ring, ["x_2", "y_2"], ["t_2"], definitions)
    assert form.coefficients == {"x_2": 2 * ring.one, "y_2": -2 * ring.one, "t_2": ring.one}


def test_monomial_content(ring):
    x, y, t = ring.gens
    content, quotient = monomial_content(x * x * t + 2 * x * t * t)
    assert content == (1, 0, 1)
    assert quotient == x + 2 * t
    assert monomial_content(1 + x) == ((0, 0, 0), 1 + x)
    assert monomial_content(ring.zero) == ((0, 0, 0), ring.zero)


@pytest.mark.parametrize(
    "left, right, equal", [
        ("x_2/(x_2*y_2)", "1/y_2", True),
        ("(1 - t_2)/(t_2 - 1)", "-1", True),
        ("2*x_2/(4*y_2)", "x_2/(2*y_2)", True),
        ("0", "0/t_2", True),
        ("x_2/y_2", "y_2/x_2", False),
        ("1/t_2", "t_2", False),
    ]
)
def test_ratfunc_equal(ring, left, right, equal):
    a, b = ring.parse(left), ring.parse(right)
    assert ratfunc_equal(a, b) is equal
    assert ratfunc_equal(b, a) is equal


def test_linearize_product_rule(ring):
    x, y, t = ring.gens
    vanishing = (1 + t) * x - y + x * y
    form = linearize_at_base(vanishing, ring, ["x_2", "y_2"], ["t_2"])
    # d(PQ) = Q(base) dP when P vanishes at the base point
    product = linearize_at_base(vanishing * (2 + t + x * t), ring, ["x_2", "y_2"], ["t_2"])
    assert product.coefficients == form.coefficients
    # both factors vanish: no first-order part
    square = linearize_at_base(vanishing * (x + y * t), ring, ["x_2", "y_2"], ["t_2"])
    assert square.is_empty


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
def test_linearize_is_the_first_order_truncation(a, b, t0):
    ring = ChartRing(["x_2", "y_2", "t_2"])
    x, y, t = ring.gens
    poly = (1 + t) * x - y + x * y + t * x * x * y
    form = linearize_at_base(poly, ring, ["x_2", "y_2"], ["t_2"])
    eps = Symbol("eps")
    sx, sy, stt = ring.ring.symbols
    curve = expand(poly.as_expr().subs({sx: a * eps, sy: b * eps, stt: t0}))
    expected = sum(
        QQ.to_sympy(evaluate(form.coefficients.get(name, ring.zero), {t: t0})) * weight
        for name, weight in (("x_2", a), ("y_2", b))
    )
    assert curve.coeff(eps, 1) == expected
