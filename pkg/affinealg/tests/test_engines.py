# affinealg/tests/test_engines.py

"""
Engine agreement for y^m · x^n: closed formulas, recurrences, partial
formulas and pullbacks must reproduce the rewriting oracle exactly.
"""

import random
from fractions import Fraction

import pytest

from src.core.algebra import AlgebraParams, ModelClass, model_params, row_shape, table_rows
from src.core.coeffs import FieldMode
from src.core.errors import NoClosedFormula, NoRecurrence
from src.core.ncpoly import (
    Engine,
    NcPoly,
    commute,
    commute_formula,
    commute_partial,
    commute_pullback,
    commute_recurrence,
    commute_rewrite,
    mul,
    term_count,
)

ROWS = table_rows()
ROW_IDS = [row_shape(r) for r in ROWS]
MAX_MN = 8

FORMULA_ROWS = {
    "(1,0,0,0)", "(1,alpha,0,0)", "(1,0,beta,0)", "(1,0,0,gamma)",
    "(1,alpha,0,gamma)", "(1,0,beta,gamma)",
    "(q,0,0,0)", "(q,alpha,0,0)", "(q,0,beta,0)", "(q,0,0,gamma)",
    "(q,alpha,0,gamma)", "(q,0,beta,gamma)",
}
RECURRENCE_ROWS = {"(1,alpha,0,0)", "(1,0,beta,0)", "(1,0,0,gamma)"}


# ─────────────────────────────────────────────────────────────────────────────
# Defining relation
# ─────────────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("alg", ROWS, ids=ROW_IDS)
def test_defining_relation(alg: AlgebraParams) -> None:
    q, alpha, beta, gamma = alg.values
    expected = NcPoly(alg, {(1, 1): q, (1, 0): alpha, (0, 1): beta, (0, 0): gamma})
    assert commute(alg, 1, 1) == expected
    assert commute_rewrite(alg, 1, 1) == expected


def test_trivial_products(generic) -> None:
    assert commute(generic, 0, 4) == NcPoly.monomial(generic, 4, 0)
    assert commute(generic, 3, 0) == NcPoly.monomial(generic, 0, 3)
    with pytest.raises(ValueError):
        commute(generic, -1, 2)


# ─────────────────────────────────────────────────────────────────────────────
# Symbolic table rows
# ─────────────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("alg", ROWS, ids=ROW_IDS)
def test_closed_formulas_match_rewriting(alg: AlgebraParams) -> None:
    if row_shape(alg) not in FORMULA_ROWS:
        with pytest.raises(NoClosedFormula):
            commute_formula(alg, 2, 2)
        return
    for m in range(MAX_MN + 1):
        for n in range(MAX_MN + 1):
            assert commute_formula(alg, m, n) == commute_rewrite(alg, m, n), (m, n)


@pytest.mark.parametrize("alg", ROWS, ids=ROW_IDS)
def test_recurrences_match_rewriting(alg: AlgebraParams) -> None:
    if row_shape(alg) not in RECURRENCE_ROWS:
        with pytest.raises(NoRecurrence):
            commute_recurrence(alg, 2, 2)
        return
    for m in range(1, MAX_MN + 1):
        for n in range(1, MAX_MN + 1):
            assert commute_recurrence(alg, m, n) == commute_rewrite(alg, m, n), (m, n)


@pytest.mark.parametrize("alg", ROWS, ids=ROW_IDS)
def test_partial_formulas_match_rewriting(alg: AlgebraParams) -> None:
    checked = 0
    for k in range(1, MAX_MN + 2):
        for m, n in ((1, k), (k, 1)):
            try:
                got = commute_partial(alg, m, n)
            except NoClosedFormula:
                continue
            checked += 1
            assert got == commute_rewrite(alg, m, n), (m, n)
    if row_shape(alg) in {"(1,alpha,beta,0)", "(1,alpha,0,gamma)", "(1,0,beta,gamma)", "(q,alpha,beta,0)"}:
        assert checked > 0


def test_partial_formula_needs_a_unit_exponent(generic) -> None:
    with pytest.raises(NoClosedFormula):
        commute_partial(generic, 2, 2)


@pytest.mark.parametrize("alg", ROWS, ids=ROW_IDS)
def test_pullback_matches_rewriting(alg: AlgebraParams) -> None:
    for m in range(1, MAX_MN + 1):
        for n in range(1, MAX_MN + 1):
            assert commute_pullback(alg, m, n) == commute_rewrite(alg, m, n), (m, n)


# ─────────────────────────────────────────────────────────────────────────────
# Numeric parameters
# ─────────────────────────────────────────────────────────────────────────────

NUMERIC = [
    AlgebraParams(2, 1, 1, 0),
    AlgebraParams(Fraction(1, 2), 3, -1, 2),
    AlgebraParams(2, 1, 1, 1),
    AlgebraParams(1, 2, -3, 5),
    AlgebraParams(3, 0, 2, 1),
    AlgebraParams(3, 1, 2, 4, field=FieldMode.prime(7)),
    AlgebraParams(1, 0, 0, 1, field=FieldMode.prime(3)),
]


@pytest.mark.parametrize("alg", NUMERIC, ids=str)
@pytest.mark.parametrize("engine", [Engine.AUTO, Engine.PULLBACK])
def test_numeric_engines_match_rewriting(alg: AlgebraParams, engine: Engine) -> None:
    for m in range(1, MAX_MN + 1):
        for n in range(1, MAX_MN + 1):
            assert commute(alg, m, n, engine) == commute_rewrite(alg, m, n), (m, n)


def test_recurrence_refuses_small_characteristic() -> None:
    alg = AlgebraParams(1, 0, 0, 1, field=FieldMode.prime(3))
    with pytest.raises(NoRecurrence):
        commute_recurrence(alg, 4, 4)


# ─────────────────────────────────────────────────────────────────────────────
# Term counts and associativity
# ─────────────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("i", range(1, 21))
def test_generic_term_count(generic, i: int) -> None:
    assert term_count(generic, i) == 2 * (i + 1)
    assert len(commute(generic, 1, i)) == 2 * (i + 1)


def _random_poly(rng: random.Random, alg: AlgebraParams) -> NcPoly:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        d = rng.randint(0, 3)
        a = rng.randint(0, d)
        terms[(a, d - a)] = rng.randint(-3, 3)
    return NcPoly(alg, terms)


ASSOC_ALGEBRAS = [
    model_params(ModelClass.COMMUTATIVE, FieldMode.rational()),
    model_params(ModelClass.WEYL, FieldMode.rational()),
    model_params(ModelClass.SHIFT, FieldMode.rational()),
    model_params(ModelClass.QUANTUM_PLANE, FieldMode.rational(), Fraction(2, 3)),
    model_params(ModelClass.QWEYL, FieldMode.rational(), Fraction(2, 3)),
    AlgebraParams.generic(),
]


@pytest.mark.parametrize("alg", ASSOC_ALGEBRAS, ids=str)
def test_associativity(alg: AlgebraParams) -> None:
    rng = random.Random(99)
    for _ in range(100):
        f, g, h = (_random_poly(rng, alg) for _ in range(3))
        assert mul(mul(f, g), h) == mul(f, mul(g, h))
