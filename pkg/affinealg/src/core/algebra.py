# affinealg/src/core/algebra.py
"""
Algebra descriptors for A(q, alpha, beta, gamma) = K<x, y | yx = q·xy + alpha·x + beta·y + gamma>.

Every such algebra is isomorphic to exactly one of five model algebras.
:func:`classify` decides which one using the division-free invariant
``gamma*(1 - q) + alpha*beta`` when ``q != 1``.  The constructors at the
bottom build the parameters of the classic operator algebras (shift,
difference, q-difference, q-differential, exponential-derivation).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Final

from src.core.coeffs import SYMBOLS, FieldKind, FieldMode, ParamRat, mode_of
from src.core.errors import DenominatorVanishes, InvalidParameters
from src.utils.logging import get_logger

log = get_logger(__name__)


class ModelClass(enum.Enum):
    """The five model algebras with their defining relations."""

    COMMUTATIVE = "Commutative"  # YX = XY
    WEYL = "Weyl"  # YX = XY + 1
    SHIFT = "Shift"  # YX = XY + Y
    QUANTUM_PLANE = "QuantumPlane"  # YX = qXY
    QWEYL = "QWeyl"  # YX = qXY + 1

    @property
    def relation(self) -> str:
        return _RELATIONS[self]


_RELATIONS: Final[dict[ModelClass, str]] = {
    ModelClass.COMMUTATIVE: "YX = XY",
    ModelClass.WEYL: "YX = XY + 1",
    ModelClass.SHIFT: "YX = XY + Y",
    ModelClass.QUANTUM_PLANE: "YX = qXY",
    ModelClass.QWEYL: "YX = qXY + 1",
}


# --------------------------------------------------------------------------- #
# AlgebraParams
# --------------------------------------------------------------------------- #


def _infer_field(values: tuple[Any, ...]) -> FieldMode:
    for v in values:
        mode = mode_of(v)
        if mode is not None and mode.kind is not FieldKind.RATIONAL:
            return mode
    return FieldMode.rational()


@dataclass(frozen=True)
class AlgebraParams:
    """
    The four structure constants of an algebra, all in one field mode.

    ``field`` is inferred from the values when omitted (QQ unless one of them
    is a rational function or a GF(p) element).  ``q`` must be nonzero.
    """

    q: Any
    alpha: Any = 0
    beta: Any = 0
    gamma: Any = 0
    field: FieldMode = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        mode = self.field or _infer_field((self.q, self.alpha, self.beta, self.gamma))
        object.__setattr__(self, "field", mode)
        for name in ("q", "alpha", "beta", "gamma"):
            object.__setattr__(self, name, mode.coerce(getattr(self, name)))
        if not self.q:
            raise InvalidParameters("q must be nonzero")

    @classmethod
    def generic(cls) -> "AlgebraParams":
        """All four parameters symbolic, over QQ(q, alpha, beta, gamma)."""
        f = FieldMode.function_field()
        return cls(*(f.symbol(s) for s in SYMBOLS), field=f)

    @property
    def values(self) -> tuple[Any, Any, Any, Any]:
        return (self.q, self.alpha, self.beta, self.gamma)

    @property
    def zero(self) -> Any:
        return self.field.zero

    @property
    def one(self) -> Any:
        return self.field.one

    def is_lie_type(self) -> bool:
        return self.q == 1

    def __str__(self) -> str:
        inside = ",".join(str(v) for v in self.values)
        return f"A({inside}) over {self.field}"


# --------------------------------------------------------------------------- #
# Classification
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class ClassInvariant:
    """``gamma*(1 - q) + alpha*beta``; the class of a q != 1 algebra is decided by it."""

    gamma_prime: Any


def class_invariant(p: AlgebraParams) -> ClassInvariant:
    return ClassInvariant(p.gamma * (1 - p.q) + p.alpha * p.beta)


def classify(p: AlgebraParams) -> ModelClass:
    if p.q == 1:
        if not (p.alpha or p.beta or p.gamma):
            cls = ModelClass.COMMUTATIVE
        elif p.alpha or p.beta:
            cls = ModelClass.SHIFT
        else:
            cls = ModelClass.WEYL
    elif class_invariant(p).gamma_prime:
        cls = ModelClass.QWEYL
    else:
        cls = ModelClass.QUANTUM_PLANE
    log.debug("classified %s as %s", p, cls.value)
    return cls


def model_params(cls: ModelClass, field_mode: FieldMode, q: Any = None) -> AlgebraParams:
    """
    Parameters of the model algebra ``cls`` over ``field_mode``.

    The quantum models need ``q``; over the function field it defaults to the
    symbol ``q``.
    """
    if cls is ModelClass.COMMUTATIVE:
        return AlgebraParams(1, 0, 0, 0, field=field_mode)
    if cls is ModelClass.WEYL:
        return AlgebraParams(1, 0, 0, 1, field=field_mode)
    if cls is ModelClass.SHIFT:
        return AlgebraParams(1, 0, 1, 0, field=field_mode)
    if q is None:
        if field_mode.kind is not FieldKind.FUNCTION:
            raise InvalidParameters(f"{cls.value} model over {field_mode} needs a value of q")
        q = field_mode.symbol("q")
    gamma = 0 if cls is ModelClass.QUANTUM_PLANE else 1
    return AlgebraParams(q, 0, 0, gamma, field=field_mode)


# --------------------------------------------------------------------------- #
# Table rows
# --------------------------------------------------------------------------- #

# Order of the rows in the two multiplication-formula tables.
_ROW_PATTERN: Final[tuple[tuple[bool, bool, bool], ...]] = (
    (False, False, False),
    (True, False, False),
    (False, True, False),
    (True, True, False),
    (False, False, True),
    (True, False, True),
    (False, True, True),
    (True, True, True),
)


def row_shape(p: AlgebraParams) -> str:
    """Label of the table row ``p`` falls into, e.g. ``"(q,alpha,0,gamma)"``."""
    parts = ["1" if p.q == 1 else "q"]
    for name, value in zip(SYMBOLS[1:], (p.alpha, p.beta, p.gamma)):
        parts.append(name if value else "0")
    return "(" + ",".join(parts) + ")"


def table_rows() -> list[AlgebraParams]:
    """The sixteen table rows with symbolic parameters, Lie rows first."""
    f = FieldMode.function_field()
    rows = []
    for q in (f.one, f.symbol("q")):
        for has_a, has_b, has_g in _ROW_PATTERN:
            rows.append(
                AlgebraParams(
                    q,
                    f.symbol("alpha") if has_a else 0,
                    f.symbol("beta") if has_b else 0,
                    f.symbol("gamma") if has_g else 0,
                    field=f,
                )
            )
    return rows


# --------------------------------------------------------------------------- #
# Operator algebras
# --------------------------------------------------------------------------- #


def _field_for(*values: Any) -> FieldMode:
    return _infer_field(values)


def c_shift(c: Any) -> AlgebraParams:
    """Multiplication by t and the shift ``s_c f(t) = f(t + c)``: ``s x = x s - c s``."""
    if not c:
        raise InvalidParameters("shift step must be nonzero")
    return AlgebraParams(1, 0, -c, 0, field=_field_for(c))


def c_difference(c1: Any, c2: Any) -> AlgebraParams:
    """Multiplication by t and the scaled difference ``(f(t + c1) - f(t)) / c2``."""
    if not c1 or not c2:
        raise InvalidParameters("difference steps must be nonzero")
    f = _field_for(c1, c2)
    return AlgebraParams(1, 0, c1, f.coerce(c1) / f.coerce(c2), field=f)


def q_difference(q: Any = None) -> AlgebraParams:
    """Multiplication by t and the q-difference operator: ``yx = qxy + (q - 1)x``."""
    if q is None:
        q = ParamRat.symbol("q")
    return AlgebraParams(q, q - 1, 0, 0, field=_field_for(q))


def cq_differential(c1: int, c2: int, q: Any = None) -> AlgebraParams:
    """
    Multiplication by t and the (c1, c2) q-differential operator:
    ``yx = q^c1 xy + (q^c1 - 1)/(q^c2 - 1)``.
    """
    if c1 <= 0 or c2 <= 0:
        raise InvalidParameters("c1 and c2 must be positive integers")
    if q is None:
        q = ParamRat.symbol("q")
    f = _field_for(q)
    q = f.coerce(q)
    den = q**c2 - 1
    if not den:
        raise DenominatorVanishes(f"q^{c2} - 1 vanishes for q = {q}")
    return AlgebraParams(q**c1, 0, 0, (q**c1 - 1) / den, field=f)


def exp_derivation(lam: Any) -> AlgebraParams:
    """d/dt together with multiplication by ``e^(lam t)``: ``d e = e d + lam e``."""
    if not lam:
        raise InvalidParameters("lambda must be nonzero")
    return AlgebraParams(1, lam, 0, 0, field=_field_for(lam))
