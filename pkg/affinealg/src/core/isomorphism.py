# affinealg/src/core/isomorphism.py
"""
Affine isomorphisms between the model algebras and arbitrary
A(q, alpha, beta, gamma).

A map is stored in the model → target direction: ``image_x`` and
``image_y`` are the degree-≤1 images of the model generators X and Y,
written in the target's generators x and y.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from src.core.algebra import (
    AlgebraParams,
    ModelClass,
    class_invariant,
    classify,
    model_params,
    row_shape,
)
from src.core.errors import DenominatorVanishes, SingularLinearPart
from src.core.ncpoly import Engine, NcPoly, mul
from src.utils.logging import get_logger

log = get_logger(__name__)


@dataclass(frozen=True)
class AffineMap:
    """Substitution ``X -> image_x, Y -> image_y`` from ``source`` into ``target``."""

    image_x: NcPoly
    image_y: NcPoly
    source: AlgebraParams
    target: AlgebraParams

    def __post_init__(self) -> None:
        for image in (self.image_x, self.image_y):
            if image.algebra != self.target:
                raise ValueError("generator images must live in the target algebra")
            if image.degree() > 1:
                raise ValueError(f"image {image} is not affine")

    @property
    def linear_part(self) -> tuple[tuple[Any, Any], tuple[Any, Any]]:
        return (
            (self.image_x.coefficient(1, 0), self.image_x.coefficient(0, 1)),
            (self.image_y.coefficient(1, 0), self.image_y.coefficient(0, 1)),
        )

    @property
    def translation(self) -> tuple[Any, Any]:
        return self.image_x.coefficient(0, 0), self.image_y.coefficient(0, 0)

    @property
    def determinant(self) -> Any:
        (a1, b1), (a2, b2) = self.linear_part
        return a1 * b2 - a2 * b1

    def __str__(self) -> str:
        return f"X -> {self.image_x}, Y -> {self.image_y}"


def _affine(alg: AlgebraParams, a: Any, b: Any, c: Any) -> NcPoly:
    """``a*x + b*y + c`` in ``alg``."""
    return NcPoly(alg, {(1, 0): a, (0, 1): b, (0, 0): c})


def _require(value: Any, what: str) -> Any:
    if not value:
        raise DenominatorVanishes(f"{what} vanishes")
    return value


def identity_map(alg: AlgebraParams) -> AffineMap:
    return AffineMap(NcPoly.x(alg), NcPoly.y(alg), alg, alg)


# --------------------------------------------------------------------------- #
# Classifying isomorphism
# --------------------------------------------------------------------------- #


def iso_from_model(p: AlgebraParams) -> AffineMap:
    """
    The affine isomorphism from the model algebra of ``p`` onto ``p``.

    Table maps are used whenever they are correct for ``p``; the q != 1 cases
    fall back to the translation onto the quantum plane when
    ``gamma*(1 - q) + alpha*beta`` vanishes and to the general q-Weyl map
    otherwise.
    """
    q, alpha, beta, gamma = p.values
    one, zero = p.one, p.zero
    cls = classify(p)
    source = model_params(cls, p.field, q if cls in (ModelClass.QUANTUM_PLANE, ModelClass.QWEYL) else None)

    if cls is ModelClass.COMMUTATIVE:
        ix, iy = NcPoly.x(p), NcPoly.y(p)
    elif cls is ModelClass.SHIFT and alpha:
        ix = _affine(p, zero, -one / alpha, zero)
        if beta or gamma:
            iy = _affine(p, alpha, beta, gamma)
        else:
            iy = NcPoly.x(p)
    elif cls is ModelClass.SHIFT:
        ix = _affine(p, one / beta, zero, zero)
        iy = _affine(p, zero, beta, gamma) if gamma else NcPoly.y(p)
    elif cls is ModelClass.WEYL:
        ix, iy = NcPoly.x(p), _affine(p, zero, one / gamma, zero)
    else:
        shift_x = beta / (1 - q)
        shift_y = alpha / (1 - q)
        if cls is ModelClass.QUANTUM_PLANE:
            ix = _affine(p, one, zero, -shift_x)
            iy = _affine(p, zero, one, -shift_y)
        elif not alpha and not beta:
            ix, iy = NcPoly.x(p), _affine(p, zero, one / gamma, zero)
        elif not beta and gamma:
            ix, iy = _affine(p, one / gamma, zero, zero), _affine(p, zero, one, -shift_y)
        elif not alpha and gamma:
            ix, iy = _affine(p, one, zero, -shift_x), _affine(p, zero, one / gamma, zero)
        else:
            g = class_invariant(p).gamma_prime
            ix = _affine(p, one, zero, -shift_x)
            iy = _affine(p, zero, (1 - q) / g, -alpha / g)
    m = AffineMap(ix.simplified(), iy.simplified(), source, p)
    log.debug("iso_from_model %s: %s onto %s", cls.value, m, p)
    return m


def table_map(p: AlgebraParams) -> tuple[ModelClass, AffineMap]:
    """
    The literal substitution and class label printed for the row of ``p``.

    Used as a regression oracle: it is not correct for every algebra (see
    :func:`iso_from_model`).
    """
    q, alpha, beta, gamma = p.values
    one, zero = p.one, p.zero
    row = row_shape(p)
    lie = row.startswith("(1,")
    has_a, has_b, has_g = (part != "0" for part in row.strip("()").split(",")[1:])

    if lie:
        if not (has_a or has_b or has_g):
            cls = ModelClass.COMMUTATIVE
        elif has_g and not (has_a or has_b):
            cls = ModelClass.WEYL
        else:
            cls = ModelClass.SHIFT
        if has_a:
            ix = _affine(p, zero, -one / alpha, zero)
            iy = _affine(p, alpha, beta, gamma) if (has_b or has_g) else NcPoly.x(p)
        elif has_b:
            ix = _affine(p, one / beta, zero, zero)
            iy = _affine(p, zero, beta, gamma) if has_g else NcPoly.y(p)
        elif has_g:
            ix, iy = NcPoly.x(p), _affine(p, zero, one / gamma, zero)
        else:
            ix, iy = NcPoly.x(p), NcPoly.y(p)
        source = model_params(cls, p.field)
        return cls, AffineMap(ix, iy, source, p)

    cls = ModelClass.QWEYL if has_g else ModelClass.QUANTUM_PLANE
    one_minus_q = _require(1 - q, "1 - q")
    shift_x = beta / one_minus_q
    shift_y = alpha / one_minus_q
    if not has_g:
        ix = _affine(p, one, zero, -shift_x)
        iy = _affine(p, zero, one, -shift_y)
    elif has_a and has_b:
        g = _require(class_invariant(p).gamma_prime, "gamma*(1 - q) + alpha*beta")
        ix = _affine(p, one, zero, -shift_x)
        iy = _affine(p, zero, one_minus_q / g, -alpha / g)
    elif has_a:
        ix, iy = _affine(p, one / gamma, zero, zero), _affine(p, zero, one, -shift_y)
    elif has_b:
        ix, iy = _affine(p, one, zero, -shift_x), _affine(p, zero, one / gamma, zero)
    else:
        ix, iy = NcPoly.x(p), _affine(p, zero, one / gamma, zero)
    source = model_params(cls, p.field, q)
    return cls, AffineMap(ix, iy, source, p)


# --------------------------------------------------------------------------- #
# Verification and application
# --------------------------------------------------------------------------- #


def isomorphism_residual(m: AffineMap) -> NcPoly:
    """``φ(Y)φ(X) - q φ(X)φ(Y) - α φ(X) - β φ(Y) - γ`` with the source's parameters."""
    q, alpha, beta, gamma = (m.target.field.coerce(v) for v in m.source.values)
    fx, fy = m.image_x, m.image_y
    residual = mul(fy, fx, Engine.REWRITE) - mul(fx, fy, Engine.REWRITE).scale(q)
    residual = residual - fx.scale(alpha) - fy.scale(beta) - gamma
    return residual.simplified()


def verify_isomorphism(m: AffineMap) -> bool:
    """True iff the model relation maps to zero and the linear part is invertible."""
    if not m.determinant:
        log.debug("map %s has a singular linear part", m)
        return False
    residual = isomorphism_residual(m)
    if not residual.is_zero():
        log.debug("map %s leaves residual %s", m, residual)
        return False
    return True


def _line(image: NcPoly, var: tuple[int, int]) -> tuple[Any, Any] | None:
    """``(s, t)`` when ``image = s*var + t``; ``None`` if the other generator occurs."""
    if any(mono not in (var, (0, 0)) for mono in image.terms):
        return None
    return image.coefficient(*var), image.coefficient(0, 0)


def _accumulate(acc: dict[Any, Any], key: Any, value: Any) -> None:
    total = acc[key] + value if key in acc else value
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


class MapApplier:
    """
    Applies one :class:`AffineMap` to many polynomials.

    Powers and products of the generator images are kept between calls.
    When ``X`` maps to ``s*x + t`` and ``Y`` to ``u*y + v``, the image of
    ``X^a Y^b`` is ``(s*x + t)^a (u*y + v)^b``.  That product is already in
    normal form, so the substitution needs no multiplication in the target.
    """

    def __init__(self, m: AffineMap, engine: Engine = Engine.AUTO) -> None:
        self.map = m
        self.engine = engine
        self._lines = (_line(m.image_x, (1, 0)), _line(m.image_y, (0, 1)))
        self._separable = None not in self._lines
        one = m.target.one
        self._expansions: tuple[list[dict[int, Any]], list[dict[int, Any]]] = ([{0: one}], [{0: one}])
        self._powers = ([NcPoly.one(m.target)], [NcPoly.one(m.target)])
        self._products: dict[tuple[int, int], NcPoly] = {}

    def __call__(self, f: NcPoly) -> NcPoly:
        if f.algebra != self.map.source:
            raise ValueError("polynomial does not live in the map's source algebra")
        if f.is_zero():
            return NcPoly.zero(self.map.target)
        if self._separable:
            return self._substitute(f)
        out = NcPoly.zero(self.map.target)
        coerce = self.map.target.field.coerce
        for (a, b), c in f.terms.items():
            out = out + self._product(a, b).scale(coerce(c))
        return out

    # ---------- separable maps --------------------------------------------- #

    def _expansion(self, side: int, k: int) -> dict[int, Any]:
        """Coefficients of ``(s*g + t)^k``, ``g`` the target generator of ``side`` (0 = x, 1 = y)."""
        rows = self._expansions[side]
        s, t = self._lines[side]  # type: ignore[misc]
        while len(rows) <= k:
            prev = rows[-1]
            nxt: dict[int, Any] = {}
            for i, c in prev.items():
                _accumulate(nxt, i + 1, c * s)
                if t:
                    _accumulate(nxt, i, c * t)
            rows.append(nxt)
        return rows[k]

    def _substitute(self, f: NcPoly) -> NcPoly:
        coerce = self.map.target.field.coerce
        # sum over b first: rows[a][j] = sum_b c_ab [y^j](u*y + v)^b
        rows: dict[int, dict[int, Any]] = {}
        for (a, b), c in f.terms.items():
            row = rows.setdefault(a, {})
            c = coerce(c)
            for j, e in self._expansion(1, b).items():
                _accumulate(row, j, c * e)
        out: dict[tuple[int, int], Any] = {}
        for a, row in rows.items():
            for i, e in self._expansion(0, a).items():
                for j, v in row.items():
                    _accumulate(out, (i, j), e * v)
        return NcPoly(self.map.target, out)

    # ---------- general maps ----------------------------------------------- #

    def _power(self, side: int, k: int) -> NcPoly:
        powers = self._powers[side]
        image = self.map.image_x if side == 0 else self.map.image_y
        while len(powers) <= k:
            powers.append(mul(powers[-1], image, self.engine))
        return powers[k]

    def _product(self, a: int, b: int) -> NcPoly:
        if (a, b) not in self._products:
            self._products[(a, b)] = mul(self._power(0, a), self._power(1, b), self.engine)
        return self._products[(a, b)]


def apply_map(m: AffineMap, f: NcPoly, engine: Engine = Engine.AUTO) -> NcPoly:
    """Substitute the generator images into ``f`` and renormalise in the target."""
    return MapApplier(m, engine)(f)


def invert_affine(m: AffineMap) -> AffineMap:
    """The inverse substitution, from ``m.target`` back into ``m.source``."""
    det = m.determinant
    if not det:
        raise SingularLinearPart(f"linear part of {m} is singular")
    (a1, b1), (a2, b2) = m.linear_part
    c1, c2 = m.translation
    src = m.source
    coerce = src.field.coerce
    a1, b1, a2, b2, c1, c2, det = (coerce(v) for v in (a1, b1, a2, b2, c1, c2, det))
    # [x; y] = L^-1 ([X; Y] - c)
    ix = _affine(src, b2 / det, -b1 / det, (b1 * c2 - b2 * c1) / det)
    iy = _affine(src, -a2 / det, a1 / det, (a2 * c1 - a1 * c2) / det)
    return AffineMap(ix.simplified(), iy.simplified(), m.target, src)


# --------------------------------------------------------------------------- #
# One-dimensional representations
# --------------------------------------------------------------------------- #


def one_dim_reps(p: AlgebraParams) -> NcPoly:
    """
    ``(1 - q)ab - alpha a - beta b - gamma`` as a polynomial in the commuting
    unknowns ``a`` (written x) and ``b`` (written y).

    ``x -> a, y -> b`` is a representation exactly when it vanishes.
    """
    q, alpha, beta, gamma = p.values
    commutative = model_params(ModelClass.COMMUTATIVE, p.field)
    return NcPoly(
        commutative,
        {(1, 1): 1 - q, (1, 0): -alpha, (0, 1): -beta, (0, 0): -gamma},
    )


def evaluate_commutative(f: NcPoly, a: Any, b: Any) -> Any:
    """Value of a commutative polynomial at ``x = a, y = b``."""
    total = f.algebra.zero
    for (i, j), c in f.terms.items():
        total = total + c * a**i * b**j
    return total
