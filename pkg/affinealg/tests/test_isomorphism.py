# affinealg/tests/test_isomorphism.py

"""Tests for the classifying isomorphisms, table maps and one-dimensional representations."""

import random
from fractions import Fraction

import pytest

from src.core.algebra import AlgebraParams, ModelClass, classify, model_params, row_shape, table_rows
from src.core.coeffs import FieldMode, ParamRat
from src.core.errors import SingularLinearPart
from src.core.isomorphism import (
    AffineMap,
    MapApplier,
    apply_map,
    evaluate_commutative,
    identity_map,
    invert_affine,
    iso_from_model,
    isomorphism_residual,
    one_dim_reps,
    table_map,
    verify_isomorphism,
)
from src.core.ncpoly import NcPoly

QQ = FieldMode.rational()
ROWS = table_rows()


def _random_params(rng: random.Random, i: int) -> AlgebraParams:
    choices = [Fraction(0), Fraction(1), Fraction(-2), Fraction(1, 3)]
    q = rng.choice([Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2)])
    a, b, g = (rng.choice(choices) for _ in range(3))
    if i % 5 == 0 and q != 1:
        a, b = Fraction(1), Fraction(-2)
        g = -a * b / (1 - q)
    return AlgebraParams(q, a, b, g)


# ─────────────────────────────────────────────────────────────────────────────
# iso_from_model
# ─────────────────────────────────────────────────────────────────────────────

def test_iso_from_model_random_samples() -> None:
    rng = random.Random(31)
    for i in range(200):
        p = _random_params(rng, i)
        iso = iso_from_model(p)
        assert iso.target == p
        assert iso.source == model_params(classify(p), QQ, p.q if p.q != 1 else None)
        assert verify_isomorphism(iso), p


def test_iso_from_model_over_prime_field() -> None:
    gf = FieldMode.prime(7)
    for values in [(3, 1, 2, 4), (2, 1, 1, 1), (1, 0, 4, 0), (1, 3, 0, 5), (8, 0, 0, 2), (5, 0, 0, 0)]:
        p = AlgebraParams(*values, field=gf)
        assert verify_isomorphism(iso_from_model(p)), p


@pytest.mark.parametrize("p", ROWS, ids=row_shape)
def test_iso_from_model_symbolic_rows(p: AlgebraParams) -> None:
    assert verify_isomorphism(iso_from_model(p))


# ─────────────────────────────────────────────────────────────────────────────
# Table maps
# ─────────────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("p", ROWS, ids=row_shape)
def test_table_maps(p: AlgebraParams) -> None:
    cls, m = table_map(p)
    if row_shape(p) == "(q,alpha,beta,0)":
        # The printed row pairs a translation with the quantum plane, which
        # leaves the constant alpha*beta/(1 - q).
        q, alpha, beta, _ = p.values
        assert cls is ModelClass.QUANTUM_PLANE
        assert classify(p) is ModelClass.QWEYL
        assert isomorphism_residual(m) == NcPoly.constant(p, alpha * beta / (1 - q))
        assert not verify_isomorphism(m)
        return
    assert cls is classify(p)
    assert verify_isomorphism(m)


def test_table_map_residual_at_a_numeric_point() -> None:
    p = AlgebraParams(2, 1, 1, 0)
    cls, m = table_map(p)
    assert cls is ModelClass.QUANTUM_PLANE
    assert isomorphism_residual(m) == -1
    assert classify(p) is ModelClass.QWEYL
    assert verify_isomorphism(iso_from_model(p))


# ─────────────────────────────────────────────────────────────────────────────
# Inversion and application
# ─────────────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize(
    "values", [(2, 1, 1, 0), (1, 2, -3, 5), (Fraction(1, 2), 0, 3, 1), (1, 0, 0, 4)]
)
def test_invert_affine_round_trip(values: tuple) -> None:
    p = AlgebraParams(*values)
    iso = iso_from_model(p)
    back = invert_affine(iso)
    assert back.source == p and back.target == iso.source
    for gen in (NcPoly.x(p), NcPoly.y(p), NcPoly.x(p) * NcPoly.y(p) + 2):
        assert apply_map(iso, apply_map(back, gen)) == gen


def test_apply_map_respects_the_relation() -> None:
    p = AlgebraParams(1, 2, -3, 5)
    iso = iso_from_model(p)
    model = iso.source
    y_x = NcPoly.y(model) * NcPoly.x(model)
    assert apply_map(iso, y_x) == iso.image_y * iso.image_x
    with pytest.raises(ValueError):
        apply_map(iso, NcPoly.x(p))


def test_singular_and_non_affine_maps(weyl) -> None:
    flat = AffineMap(NcPoly.x(weyl), NcPoly.x(weyl) * 2, weyl, weyl)
    assert flat.determinant == 0
    assert not verify_isomorphism(flat)
    with pytest.raises(SingularLinearPart):
        invert_affine(flat)
    with pytest.raises(ValueError):
        AffineMap(NcPoly.x(weyl) ** 2, NcPoly.y(weyl), weyl, weyl)
    assert verify_isomorphism(identity_map(weyl))


# ─────────────────────────────────────────────────────────────────────────────
# One-dimensional representations
# ─────────────────────────────────────────────────────────────────────────────

def test_one_dim_reps() -> None:
    weyl = model_params(ModelClass.WEYL, QQ)
    comm = model_params(ModelClass.COMMUTATIVE, QQ)
    assert one_dim_reps(weyl) == NcPoly.constant(comm, -1)

    shift = model_params(ModelClass.SHIFT, QQ)
    assert one_dim_reps(shift) == -NcPoly.y(comm)
    assert evaluate_commutative(one_dim_reps(shift), 7, 0) == 0

    qweyl = model_params(ModelClass.QWEYL, QQ, 2)
    reps = one_dim_reps(qweyl)
    assert reps == -(NcPoly.x(comm) * NcPoly.y(comm)) - 1
    assert evaluate_commutative(reps, -1, 1) == 0


def test_one_dim_reps_symbolic() -> None:
    p = AlgebraParams.generic()
    q, alpha, beta, gamma = p.values
    a, b = ParamRat.symbol("alpha"), Fraction(3)
    value = evaluate_commutative(one_dim_reps(p), a, b)
    assert value == (1 - q) * a * b - alpha * a - beta * b - gamma


# ─────────────────────────────────────────────────────────────────────────────
# Properties over random parameters
# ─────────────────────────────────────────────────────────────────────────────

def _random_element(rng: random.Random, alg: AlgebraParams) -> NcPoly:
    terms = {}
    for _ in range(rng.randint(1, 4)):
        d = rng.randint(0, 3)
        a = rng.randint(0, d)
        terms[(a, d - a)] = rng.choice([-2, -1, 1, 3, Fraction(1, 2)])
    return NcPoly(alg, terms)


def test_invert_affine_is_an_involution() -> None:
    rng = random.Random(5)
    for i in range(100):
        iso = iso_from_model(_random_params(rng, i))
        assert invert_affine(invert_affine(iso)) == iso


def test_classification_survives_translation_and_scaling() -> None:
    rng = random.Random(11)
    for i in range(100):
        p = _random_params(rng, i)
        q, alpha, beta, gamma = p.values
        s, t = rng.choice([-1, 2, Fraction(1, 2)]), rng.choice([1, -3, Fraction(2, 5)])
        shifted = AlgebraParams(q, alpha + (q - 1) * t, beta + (q - 1) * s, gamma + alpha * s + beta * t + (q - 1) * s * t)
        move = AffineMap(NcPoly.x(shifted) + s, NcPoly.y(shifted) + t, p, shifted)
        lam, mu = rng.choice([2, -1, Fraction(1, 3)]), rng.choice([3, Fraction(-1, 2)])
        scaled = AlgebraParams(q, alpha / mu, beta / lam, gamma / (lam * mu))
        stretch = AffineMap(NcPoly.x(scaled) * lam, NcPoly.y(scaled) * mu, p, scaled)
        for m in (move, stretch):
            assert verify_isomorphism(m), (p, m.target)
            assert classify(m.target) is classify(p)


def test_apply_map_is_a_homomorphism() -> None:
    rng = random.Random(23)
    for i in range(40):
        p = _random_params(rng, i)
        iso = iso_from_model(p)
        f, g = _random_element(rng, iso.source), _random_element(rng, iso.source)
        assert apply_map(iso, f * g) == apply_map(iso, f) * apply_map(iso, g)
        assert apply_map(iso, f + g) == apply_map(iso, f) + apply_map(iso, g)


@pytest.mark.parametrize("p", [AlgebraParams.generic(), AlgebraParams(1, 2, -3, 5), AlgebraParams(3, 0, 1, 0)], ids=str)
def test_map_applier_matches_direct_substitution(p: AlgebraParams) -> None:
    iso = iso_from_model(p)
    apply = MapApplier(iso)
    f = NcPoly(iso.source, {(2, 1): 3, (1, 2): -1, (0, 3): Fraction(1, 2), (1, 0): 4, (0, 0): 7})
    expected = NcPoly.zero(p)
    for (a, b), c in f.terms.items():
        expected = expected + (iso.image_x ** a * iso.image_y ** b).scale(p.field.coerce(c))
    assert apply(f) == expected
    assert apply(f) == apply_map(iso, f)
