# affinealg/tests/test_expr.py

"""Tests for the expression grammar in src/cli/expr.py."""

import random
from fractions import Fraction

import pytest

from src.cli.expr import BinOp, Gen, Neg, Num, Pow, Sym, parse, parse_poly
from src.core.algebra import AlgebraParams, ModelClass, model_params
from src.core.coeffs import FieldKind, FieldMode, ParamRat
from src.core.errors import DivisionByZero, ExprSyntaxError, UnknownSymbol
from src.core.ncpoly import NcPoly, commute


# ─────────────────────────────────────────────────────────────────────────────
# Parsing
# ─────────────────────────────────────────────────────────────────────────────

def test_parse_tree_shape() -> None:
    tree = parse("-x^2 + 3*y")
    assert isinstance(tree, BinOp) and tree.op == "+"
    assert tree.left == Neg(Pow(Gen("x", 1), 2, 2), 0)
    assert tree.right == BinOp("*", Num(3, 7), Gen("y", 9), 8)
    assert parse("alpha") == Sym("alpha", 0)


@pytest.mark.parametrize(
    "text,position",
    [
        ("x + * y", 4),
        ("x^y", 2),
        ("(x", 2),
        ("x $ y", 2),
        ("2x", 1),
        ("", 0),
        ("x^-1", 2),
    ],
)
def test_syntax_error_positions(text: str, position: int) -> None:
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)


def test_unknown_symbol() -> None:
    with pytest.raises(UnknownSymbol, match="'z'"):
        parse("x*z")


# ─────────────────────────────────────────────────────────────────────────────
# Evaluation
# ─────────────────────────────────────────────────────────────────────────────

def test_evaluate_in_weyl(weyl) -> None:
    assert str(parse_poly("y^2*x^2", weyl)) == "x^2*y^2 + 4*x*y + 2"
    assert parse_poly("y*x - x*y", weyl) == 1
    assert parse_poly("--x", weyl) == NcPoly.x(weyl)
    assert str(parse_poly("x/2 - 1/3", weyl)) == "1/2*x - 1/3"


def test_parameters_evaluate_to_their_values(weyl) -> None:
    assert parse_poly("gamma*x + q", weyl) == NcPoly.x(weyl) + 1
    generic = AlgebraParams.generic()
    f = parse_poly("q*x", generic)
    assert f.coefficient(1, 0) == ParamRat.symbol("q")


def test_division_rules(weyl) -> None:
    with pytest.raises(ExprSyntaxError, match="scalar") as info:
        parse_poly("x/y", weyl)
    assert info.value.position == 1
    with pytest.raises(DivisionByZero):
        parse_poly("x/(2-2)", weyl)


def test_evaluate_over_prime_field() -> None:
    alg = model_params(ModelClass.WEYL, FieldMode.prime(3))
    assert parse_poly("x^3*y^3 - y^3*x^3", alg).is_zero()
    assert parse_poly("4*x", alg) == NcPoly.x(alg)


# ─────────────────────────────────────────────────────────────────────────────
# Printed polynomials parse back
# ─────────────────────────────────────────────────────────────────────────────

def _coefficient_pool(alg: AlgebraParams) -> list:
    if alg.field.kind is FieldKind.FUNCTION:
        q, alpha, beta, gamma = (ParamRat.symbol(s) for s in ("q", "alpha", "beta", "gamma"))
        return [q, alpha - 1, 1 / (1 - q), beta * gamma / 2, alpha / gamma - q**2, -3]
    if alg.field.kind is FieldKind.PRIME:
        return list(range(1, alg.field.p))
    return [-3, -1, 1, 2, 5, Fraction(1, 2), Fraction(-2, 3)]


@pytest.mark.parametrize(
    "alg",
    [
        model_params(ModelClass.WEYL, FieldMode.rational()),
        AlgebraParams(3, 1, 2, 4, field=FieldMode.prime(7)),
        AlgebraParams.generic(),
    ],
    ids=["QQ", "GF7", "function-field"],
)
def test_printed_polynomials_parse_back(alg: AlgebraParams) -> None:
    rng = random.Random(3)
    pool = _coefficient_pool(alg)
    for _ in range(200):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            a, b = rng.randint(0, 3), rng.randint(0, 3)
            terms[(a, b)] = rng.choice(pool)
        f = NcPoly(alg, terms)
        assert parse_poly(str(f), alg) == f, str(f)


def test_printed_symbolic_polynomials_parse_back() -> None:
    generic = AlgebraParams.generic()
    for m, n in [(1, 1), (2, 1), (2, 2), (1, 3)]:
        f = commute(generic, m, n)
        assert parse_poly(str(f), generic) == f
