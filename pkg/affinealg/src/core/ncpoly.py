# affinealg/src/core/ncpoly.py
"""
ncpoly.py – polynomials in PBW normal form and the engines for ``y^m · x^n``.

Every element of A(q, alpha, beta, gamma) is written uniquely as
``sum c_ab x^a y^b``.  Multiplying two normal forms reduces to the single
product ``y^m · x^n`` (everything left of it is already x's, everything
right of it already y's), which can be produced by

* ``REWRITE``     – brute-force application of the defining relation,
* ``FORMULA``     – the closed formula for the parameter row,
* ``RECURRENCE``  – the coefficient recurrences of three Lie rows,
* ``PULLBACK``    – the model algebra's formula mapped through the
  classifying isomorphism,

or served from a :class:`CommuteCache` following one of three storage
strategies.
"""

from __future__ import annotations

import enum
import threading
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Any, Callable, Final, Iterator, Mapping

from src.core.algebra import AlgebraParams, row_shape
from src.core.coeffs import FieldKind, simplify, specialize
from src.core.errors import (
    AffineAlgebraError,
    AlgebraMismatch,
    DegreeOverflow,
    DivisionByZero,
    NoClosedFormula,
    NoRecurrence,
)
from src.core.qcomb import binomial, falling, q_binomial, q_falling, q_number
from src.utils.logging import get_logger

log = get_logger(__name__)

#: Largest total degree of any monomial the package will build.
MAX_DEGREE: Final[int] = 2**20

Monomial = tuple[int, int]
Terms = dict[Monomial, Any]


# --------------------------------------------------------------------------- #
# NcPoly
# --------------------------------------------------------------------------- #


def _needs_parens(c: Any) -> bool:
    if isinstance(c, Fraction):
        return False
    text = str(c)
    return any(ch in "+-/" for ch in text[1:])


def _format_monomial(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


class NcPoly:
    """
    Immutable element of an algebra in normal form.

    ``terms`` maps ``(a, b)`` to the nonzero coefficient of ``x^a y^b``.
    Coefficients are coerced into the algebra's field on construction.
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: AlgebraParams, terms: Mapping[Monomial, Any] | None = None) -> None:
        clean: Terms = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in monomial {(a, b)}")
            if a + b > MAX_DEGREE:
                raise DegreeOverflow(f"monomial degree {a + b} exceeds {MAX_DEGREE}")
            c = algebra.field.coerce(c)
            if c:
                clean[(a, b)] = c
        self.algebra = algebra
        self._terms = clean

    @classmethod
    def _wrap(cls, algebra: AlgebraParams, terms: Terms) -> "NcPoly":
        obj = object.__new__(cls)
        obj.algebra = algebra
        obj._terms = terms
        return obj

    # ---------- constructors ----------------------------------------------- #

    @classmethod
    def zero(cls, algebra: AlgebraParams) -> "NcPoly":
        return cls._wrap(algebra, {})

    @classmethod
    def constant(cls, algebra: AlgebraParams, c: Any) -> "NcPoly":
        return cls(algebra, {(0, 0): c})

    @classmethod
    def one(cls, algebra: AlgebraParams) -> "NcPoly":
        return cls._wrap(algebra, {(0, 0): algebra.one})

    @classmethod
    def monomial(cls, algebra: AlgebraParams, a: int, b: int, c: Any = 1) -> "NcPoly":
        return cls(algebra, {(a, b): c})

    @classmethod
    def x(cls, algebra: AlgebraParams) -> "NcPoly":
        return cls._wrap(algebra, {(1, 0): algebra.one})

    @classmethod
    def y(cls, algebra: AlgebraParams) -> "NcPoly":
        return cls._wrap(algebra, {(0, 1): algebra.one})

    # ---------- inspection ------------------------------------------------- #

    @property
    def terms(self) -> Mapping[Monomial, Any]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((a + b for a, b in self._terms), default=-1)

    def monomials(self) -> list[Monomial]:
        """Monomials in printing order: degree-descending, then x-degree-descending."""
        return sorted(self._terms, key=lambda m: (m[0] + m[1], m[0]), reverse=True)

    def coefficient(self, a: int, b: int) -> Any:
        return self._terms.get((a, b), self.algebra.zero)

    def __iter__(self) -> Iterator[tuple[Monomial, Any]]:
        for mono in self.monomials():
            yield mono, self._terms[mono]

    def __len__(self) -> int:
        return len(self._terms)

    # ---------- linear structure ------------------------------------------- #

    def _check(self, other: "NcPoly") -> None:
        if other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra} and {other.algebra} differ")

    def _lift(self, other: object) -> "NcPoly | None":
        if isinstance(other, NcPoly):
            self._check(other)
            return other
        try:
            return NcPoly.constant(self.algebra, other)
        except AffineAlgebraError:
            return None

    def __add__(self, other: object) -> "NcPoly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NcPoly._wrap(self.algebra, _add_terms(dict(self._terms), o._terms))

    __radd__ = __add__

    def __neg__(self) -> "NcPoly":
        return NcPoly._wrap(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> "NcPoly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "NcPoly":
        return (-self) + other

    def scale(self, c: Any) -> "NcPoly":
        c = self.algebra.field.coerce(c)
        if not c:
            return NcPoly.zero(self.algebra)
        scaled = {m: v * c for m, v in self._terms.items()}
        return NcPoly._wrap(self.algebra, {m: v for m, v in scaled.items() if v})

    def __mul__(self, other: object) -> "NcPoly":
        if isinstance(other, NcPoly):
            return mul(self, other)
        try:
            return self.scale(other)
        except AffineAlgebraError:
            return NotImplemented

    def __rmul__(self, other: object) -> "NcPoly":
        try:
            return self.scale(other)
        except AffineAlgebraError:
            return NotImplemented

    def __truediv__(self, other: object) -> "NcPoly":
        c = self.algebra.field.coerce(other)
        if not c:
            raise DivisionByZero("division of a polynomial by zero")
        return self.scale(self.algebra.one / c)

    def __pow__(self, n: int) -> "NcPoly":
        return pow(self, n)

    # ---------- comparison ------------------------------------------------- #

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NcPoly):
            if other.algebra != self.algebra or other._terms.keys() != self._terms.keys():
                return False
            return all(c == other._terms[m] for m, c in self._terms.items())
        try:
            return self == NcPoly.constant(self.algebra, other)
        except AffineAlgebraError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # ---------- transformations -------------------------------------------- #

    def map_coefficients(self, fn: Callable[[Any], Any], algebra: AlgebraParams | None = None) -> "NcPoly":
        return NcPoly(algebra or self.algebra, {m: fn(c) for m, c in self._terms.items()})

    def simplified(self) -> "NcPoly":
        return NcPoly._wrap(self.algebra, {m: simplify(c) for m, c in self._terms.items()})

    def specialize(self, assignment: Mapping[str, Any], field: Any = None) -> "NcPoly":
        """Evaluate parameters and coefficients at ``assignment``."""
        params = [specialize(v, assignment, field) for v in self.algebra.values]
        target = AlgebraParams(*params, field=field)
        return self.map_coefficients(lambda c: specialize(c, assignment, target.field), target)

    # ---------- printing --------------------------------------------------- #

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for mono, c in self:
            text = _format_term(c, mono)
            if not out:
                out = text
            elif text.startswith("-"):
                out += " - " + text[1:]
            else:
                out += " + " + text
        return out

    def __repr__(self) -> str:
        return f"NcPoly({self})"


def _format_term(c: Any, mono: Monomial) -> str:
    mono_text = _format_monomial(*mono)
    if not mono_text:
        text = str(c)
        return f"({text})" if _needs_parens(c) else text
    if c == 1:
        return mono_text
    if c == -1:
        return "-" + mono_text
    text = str(c)
    if _needs_parens(c):
        text = f"({text})"
    return f"{text}*{mono_text}"


def _add_terms(acc: Terms, other: Mapping[Monomial, Any], factor: Any = None) -> Terms:
    for m, c in other.items():
        if factor is not None:
            c = c * factor
        v = acc.get(m)
        v = c if v is None else v + c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


def _check_degree(m: int, n: int) -> None:
    if m < 0 or n < 0:
        raise ValueError(f"negative exponent in y^{m} x^{n}")
    if m + n > MAX_DEGREE:
        raise DegreeOverflow(f"y^{m} x^{n} exceeds the degree cap {MAX_DEGREE}")


# --------------------------------------------------------------------------- #
# Engines
# --------------------------------------------------------------------------- #


class Engine(enum.Enum):
    AUTO = "auto"
    REWRITE = "rewrite"
    FORMULA = "formula"
    RECURRENCE = "recurrence"
    PULLBACK = "pullback"


# ---- rewrite oracle --------------------------------------------------------- #


def _times_x(alg: AlgebraParams, terms: Mapping[Monomial, Any]) -> Terms:
    """Right-multiply a normal form of y-degree at most one by ``x``."""
    q, alpha, beta, gamma = alg.values
    out: Terms = {}
    for (a, b), c in terms.items():
        if b == 0:
            _add_terms(out, {(a + 1, 0): c})
        elif b == 1:
            # x^a (y x) = x^a (q x y + alpha x + beta y + gamma)
            _add_terms(
                out,
                {
                    (a + 1, 1): c * q,
                    (a + 1, 0): c * alpha,
                    (a, 1): c * beta,
                    (a, 0): c * gamma,
                },
            )
        else:
            raise ValueError("right multiplication by x needs y-degree <= 1")
    return out


@lru_cache(maxsize=4096)
def _y_times_x_power(alg: AlgebraParams, n: int) -> Mapping[Monomial, Any]:
    """Normal form of ``y · x^n``."""
    if n == 0:
        return MappingProxyType({(0, 1): alg.one})
    return MappingProxyType(_times_x(alg, _y_times_x_power(alg, n - 1)))


def _left_y(alg: AlgebraParams, terms: Mapping[Monomial, Any], y_x: Callable[[int], Mapping[Monomial, Any]]) -> Terms:
    """``y · sum c x^a y^b = sum c (y x^a) y^b``."""
    out: Terms = {}
    for (a, b), c in terms.items():
        shifted = {(e, h + b): v for (e, h), v in y_x(a).items()}
        _add_terms(out, shifted, c)
    return out


@lru_cache(maxsize=4096)
def commute_rewrite(alg: AlgebraParams, m: int, n: int) -> NcPoly:
    """Normal form of ``y^m · x^n`` by repeated use of the defining relation."""
    _check_degree(m, n)
    terms: Mapping[Monomial, Any] = {(n, 0): alg.one}
    for _ in range(m):
        terms = _left_y(alg, terms, lambda a: _y_times_x_power(alg, a))
    return NcPoly._wrap(alg, dict(terms))


# ---- closed formulas -------------------------------------------------------- #


def _linear_power(lead: Any, const: Any, n: int) -> dict[int, Any]:
    """Coefficients of ``(lead·t + const)^n`` by the binomial theorem."""
    return {k: binomial(n, k) * lead**k * const ** (n - k) for k in range(n + 1)}


def _product(alg: AlgebraParams, x_part: Mapping[int, Any], y_part: Mapping[int, Any], factor: Any = 1) -> Terms:
    out: Terms = {}
    for a, ca in x_part.items():
        if not ca:
            continue
        for b, cb in y_part.items():
            v = ca * cb * factor
            if v:
                out[(a, b)] = v
    return out


def _formula_terms(alg: AlgebraParams, m: int, n: int) -> Terms:
    q, alpha, beta, gamma = alg.values
    one = alg.one
    row = row_shape(alg)

    if row in ("(1,0,0,0)", "(q,0,0,0)"):
        return {(n, m): q ** (m * n)}

    if row == "(1,alpha,0,0)":
        return _product(alg, {n: one}, _linear_power(one, n * alpha, m))

    if row == "(1,0,beta,0)":
        return _product(alg, _linear_power(one, m * beta, n), {m: one})

    if row == "(1,0,0,gamma)":
        return {
            (n - k, m - k): binomial(m, k) * falling(n, k) * gamma**k
            for k in range(min(m, n) + 1)
        }

    if row == "(1,alpha,0,gamma)":
        out: Terms = {}
        for i in range(n + 1):
            factor = binomial(n, i) * (-gamma) ** (n - i)
            _add_terms(out, _product(alg, _linear_power(alpha, gamma, i), _linear_power(one, i * alpha, m), factor))
        return {mono: c / alpha**n for mono, c in out.items()}

    if row == "(1,0,beta,gamma)":
        out = {}
        for i in range(m + 1):
            factor = binomial(m, i) * (-gamma) ** (m - i)
            _add_terms(out, _product(alg, _linear_power(one, i * beta, n), _linear_power(beta, gamma, i), factor))
        return {mono: c / beta**m for mono, c in out.items()}

    if row == "(q,alpha,0,0)":
        return _product(alg, {n: one}, _linear_power(q**n, q_number(n, q) * alpha, m))

    if row == "(q,0,beta,0)":
        return _product(alg, _linear_power(q**m, q_number(m, q) * beta, n), {m: one})

    if row == "(q,0,0,gamma)":
        out = {}
        for k in range(min(m, n) + 1):
            c = q_binomial(m, k, q) * q_falling(n, k, q) * q ** ((n - k) * (m - k)) * gamma**k
            _add_terms(out, {(n - k, m - k): c})
        return out

    if row == "(q,alpha,0,gamma)":
        shift = alpha / (1 - q)
        out = {}
        for k in range(min(m, n) + 1):
            for j in range(m - k + 1):
                c = q_binomial(n, k, q) * gamma**k * shift ** (m - j - k) * _inner_coefficient(q, j, k, m, n)
                _add_terms(out, {(n - k, j): c})
        return out

    if row == "(q,0,beta,gamma)":
        shift = beta / (1 - q)
        out = {}
        for k in range(min(m, n) + 1):
            for j in range(n - k + 1):
                c = q_binomial(m, k, q) * gamma**k * shift ** (n - j - k) * _inner_coefficient(q, j, k, n, m)
                _add_terms(out, {(j, m - k): c})
        return out

    raise NoClosedFormula(f"no closed formula for y^m x^n in row {row}")


def _inner_coefficient(q: Any, j: int, k: int, m: int, n: int) -> Any:
    """Alternating inner sum of the two double-sum quantum rows."""
    total = q * 0
    for i in range(m - j - k + 1):
        term = binomial(m, i + j + k) * binomial(i + j, j) * q_falling(i + j + k, k, q) * q ** ((i + j) * (n - k))
        total = total - term if i % 2 else total + term
    return total


def commute_formula(alg: AlgebraParams, m: int, n: int) -> NcPoly:
    """Normal form of ``y^m · x^n`` from the closed formula of the algebra's row."""
    _check_degree(m, n)
    if m == 0 or n == 0:
        return NcPoly.monomial(alg, n, m)
    return NcPoly(alg, _formula_terms(alg, m, n))


# ---- coefficient recurrences ----------------------------------------------- #


def _ratio(alg: AlgebraParams, num: int, den: int) -> Any:
    p = alg.field.characteristic
    if p and den % p == 0:
        raise NoRecurrence(f"recurrence divides by {den} in characteristic {p}")
    return alg.field.coerce(Fraction(num, den))


def commute_recurrence(alg: AlgebraParams, m: int, n: int) -> NcPoly:
    """
    Build ``y^m · x^n`` coefficient by coefficient from the leading one.

    Only the rows (1,alpha,0,0), (1,0,beta,0) and (1,0,0,gamma) have a
    recurrence; other rows raise :class:`NoRecurrence`.
    """
    _check_degree(m, n)
    row = row_shape(alg)
    c = alg.one
    if row == "(1,alpha,0,0)":
        terms = {(n, m): c}
        for k in range(m - 1, -1, -1):
            c = c * _ratio(alg, (k + 1) * n, m - k) * alg.alpha
            terms[(n, k)] = c
    elif row == "(1,0,beta,0)":
        terms = {(n, m): c}
        for k in range(n - 1, -1, -1):
            c = c * _ratio(alg, (k + 1) * m, n - k) * alg.beta
            terms[(k, m)] = c
    elif row == "(1,0,0,gamma)":
        terms = {(n, m): c}
        for k in range(1, min(m, n) + 1):
            c = c * _ratio(alg, (m - k + 1) * (n - k + 1), k) * alg.gamma
            terms[(n - k, m - k)] = c
    else:
        raise NoRecurrence(f"no coefficient recurrence for row {row}")
    return NcPoly(alg, terms)


# ---- partial formulas -------------------------------------------------------- #


def commute_partial(alg: AlgebraParams, m: int, n: int) -> NcPoly:
    """
    The one-sided formulas for ``y · x^n`` (``m == 1``) and ``y^m · x``
    (``n == 1``) that some rows offer where no full closed formula exists.
    """
    _check_degree(m, n)
    if m != 1 and n != 1:
        raise NoClosedFormula("partial formulas cover y·x^n and y^m·x only")
    if m == 0 or n == 0:
        return NcPoly.monomial(alg, n, m)
    q, alpha, beta, gamma = alg.values
    one = alg.one
    row = row_shape(alg)
    out: Terms = {}

    if row == "(1,alpha,beta,0)":
        if m == 1:
            # ((x + beta)^n (alpha x + beta y) - alpha x^(n+1)) / beta
            base = _linear_power(one, beta, n)
            _add_terms(out, _product(alg, {a + 1: c * alpha for a, c in base.items()}, {0: one}))
            _add_terms(out, _product(alg, base, {1: beta}))
            _add_terms(out, {(n + 1, 0): -alpha})
            return NcPoly(alg, {mono: c / beta for mono, c in out.items()})
        # ((alpha x + beta y)(y + alpha)^m - beta y^(m+1)) / alpha
        base = _linear_power(one, alpha, m)
        _add_terms(out, _product(alg, {1: alpha}, base))
        _add_terms(out, _product(alg, {0: one}, {b + 1: c * beta for b, c in base.items()}))
        _add_terms(out, {(0, m + 1): -beta})
        return NcPoly(alg, {mono: c / alpha for mono, c in out.items()})

    if row == "(1,0,0,gamma)":
        if m == 1:
            return NcPoly(alg, {(n, 1): one, (n - 1, 0): n * gamma})
        return NcPoly(alg, {(1, m): one, (0, m - 1): m * gamma})

    if row == "(1,alpha,0,gamma)":
        if m == 1:
            # x^n y + n x^(n-1) (alpha x + gamma)
            _add_terms(out, {(n, 1): one, (n, 0): n * alpha})
            _add_terms(out, {(n - 1, 0): n * gamma})
            return NcPoly(alg, out)
        # ((alpha x + gamma)(y + alpha)^m - gamma y^m) / alpha
        _add_terms(out, _product(alg, {1: alpha, 0: gamma}, _linear_power(one, alpha, m)))
        _add_terms(out, {(0, m): -gamma})
        return NcPoly(alg, {mono: c / alpha for mono, c in out.items()})

    if row == "(1,0,beta,gamma)":
        if n == 1:
            # x y^m + m y^(m-1) (beta y + gamma)
            _add_terms(out, {(1, m): one, (0, m): m * beta})
            _add_terms(out, {(0, m - 1): m * gamma})
            return NcPoly(alg, out)
        # ((x + beta)^n (beta y + gamma) - gamma x^n) / beta
        _add_terms(out, _product(alg, _linear_power(one, beta, n), {1: beta, 0: gamma}))
        _add_terms(out, {(n, 0): -gamma})
        return NcPoly(alg, {mono: c / beta for mono, c in out.items()})

    if row == "(q,alpha,beta,0)" and n == 1:
        # x (q y + alpha)^m + beta sum_k y^k alpha^(m-k) sum_i C(m-k+i, i) q^i
        _add_terms(out, _product(alg, {1: one}, _linear_power(q, alpha, m)))
        for k in range(1, m + 1):
            inner = sum((binomial(m - k + i, i) * q**i for i in range(k)), q * 0)
            _add_terms(out, {(0, k): beta * alpha ** (m - k) * inner})
        return NcPoly(alg, out)

    raise NoClosedFormula(f"no partial formula for y^{m} x^{n} in row {row}")


# ---- pullback -------------------------------------------------------------- #


class _Pullback:
    """
    Pullback state for one algebra: the classifying map, a formula cache of
    the model algebra, powers of the inverse images and a map applier.
    """

    def __init__(self, alg: AlgebraParams) -> None:
        from src.core.isomorphism import MapApplier, invert_affine, iso_from_model

        iso = iso_from_model(alg)
        back = invert_affine(iso)
        model = iso.source
        self._model_cache = CommuteCache(model, CacheStrategy.CACHE_AND_FORMULAS)
        self._bases = (back.image_y, back.image_x)
        self._powers = ([NcPoly.one(model)], [NcPoly.one(model)])
        self._apply = MapApplier(iso, Engine.REWRITE)
        self._lock = threading.Lock()

    def _power(self, side: int, k: int) -> NcPoly:
        powers = self._powers[side]
        while len(powers) <= k:
            powers.append(mul(powers[-1], self._bases[side], cache=self._model_cache))
        return powers[k]

    def __call__(self, m: int, n: int) -> NcPoly:
        with self._lock:
            product = mul(self._power(0, m), self._power(1, n), cache=self._model_cache)
            return self._apply(product).simplified()


@lru_cache(maxsize=64)
def _pullback_for(alg: AlgebraParams) -> _Pullback:
    return _Pullback(alg)


def commute_pullback(alg: AlgebraParams, m: int, n: int) -> NcPoly:
    """
    Compute ``y^m · x^n`` in the model algebra with its closed formula and map
    the result back through the classifying isomorphism.
    """
    _check_degree(m, n)
    return _pullback_for(alg)(m, n)


# ---- dispatch ------------------------------------------------------------- #


def commute(alg: AlgebraParams, m: int, n: int, engine: Engine = Engine.AUTO) -> NcPoly:
    """
    Normal form of ``y^m · x^n`` computed by ``engine``.

    ``AUTO`` tries the row's closed formula, then (over QQ and GF(p)) the
    pullback from the model algebra, then rewriting.  Over the function
    field rows without a formula are rewritten directly.
    """
    _check_degree(m, n)
    if engine is Engine.REWRITE or m == 0 or n == 0:
        return commute_rewrite(alg, m, n)
    if engine is Engine.FORMULA:
        return commute_formula(alg, m, n)
    if engine is Engine.RECURRENCE:
        return commute_recurrence(alg, m, n)
    if engine is Engine.PULLBACK:
        return commute_pullback(alg, m, n)
    try:
        return commute_formula(alg, m, n)
    except NoClosedFormula:
        pass
    if alg.field.kind is FieldKind.FUNCTION:
        return commute_rewrite(alg, m, n)
    try:
        return _cached_pullback(alg, m, n)
    except AffineAlgebraError as exc:
        log.debug("pullback failed for %s (%s); rewriting", alg, exc)
        return commute_rewrite(alg, m, n)


@lru_cache(maxsize=4096)
def _cached_pullback(alg: AlgebraParams, m: int, n: int) -> NcPoly:
    return commute_pullback(alg, m, n)


# --------------------------------------------------------------------------- #
# Multiplication cache
# --------------------------------------------------------------------------- #


class CacheStrategy(enum.Enum):
    """Storage strategies for the multiplication matrix ``M[i][j] = y^i · x^j``."""

    CACHE_ONLY = "cache-only"  # compute recursively, keep every intermediate
    FORMULAS_ONLY = "formulas-only"  # compute by formula, keep nothing
    CACHE_AND_FORMULAS = "cache-and-formulas"  # compute by formula, keep requested


class CommuteCache:
    """
    Multiplication matrix for one algebra with per-entry request counters.

    Writers take ``_lock``; independent caches may be used concurrently.
    """

    def __init__(self, algebra: AlgebraParams, strategy: CacheStrategy = CacheStrategy.CACHE_AND_FORMULAS) -> None:
        self.algebra = algebra
        self.strategy = strategy
        self.matrix: dict[Monomial, NcPoly] = {}
        self.request_counters: Counter[Monomial] = Counter()
        self.peak_entries = 0
        self._lock = threading.Lock()

    def get(self, m: int, n: int) -> NcPoly:
        _check_degree(m, n)
        with self._lock:
            self.request_counters[(m, n)] += 1
            if m == 0 or n == 0:
                return NcPoly.monomial(self.algebra, n, m)
            if self.strategy is CacheStrategy.FORMULAS_ONLY:
                return commute(self.algebra, m, n)
            if (m, n) in self.matrix:
                return self.matrix[(m, n)]
            if self.strategy is CacheStrategy.CACHE_AND_FORMULAS:
                entry = commute(self.algebra, m, n)
                self._store(m, n, entry)
                return entry
            return self._fill(m, n)

    def _store(self, m: int, n: int, entry: NcPoly) -> None:
        self.matrix[(m, n)] = entry
        self.peak_entries = max(self.peak_entries, len(self.matrix))

    def _row_one(self, j: int) -> Mapping[Monomial, Any]:
        """``M[1][j]``, filling ``M[1][1..j]`` from the left."""
        if (1, 1) not in self.matrix:
            terms = _times_x(self.algebra, {(0, 1): self.algebra.one})
            self._store(1, 1, NcPoly._wrap(self.algebra, terms))
        start = j
        while start > 2 and (1, start - 1) not in self.matrix:
            start -= 1
        for k in range(max(start, 2), j + 1):
            if (1, k) not in self.matrix:
                terms = _times_x(self.algebra, self.matrix[(1, k - 1)]._terms)
                self._store(1, k, NcPoly._wrap(self.algebra, terms))
        return self.matrix[(1, j)]._terms

    def _fill(self, m: int, n: int) -> NcPoly:
        alg = self.algebra

        def y_x(a: int) -> Mapping[Monomial, Any]:
            if a == 0:
                return {(0, 1): alg.one}
            if (1, a) not in self.matrix:
                self._row_one(a)
            return self.matrix[(1, a)]._terms

        self._row_one(n)
        i = m
        while i > 1 and (i - 1, n) not in self.matrix:
            i -= 1
        for k in range(max(i, 2), m + 1):
            below = self.matrix[(k - 1, n)]._terms
            self._store(k, n, NcPoly._wrap(alg, _left_y(alg, below, y_x)))
        log.debug("cache-only fill up to (%d, %d): %d entries", m, n, len(self.matrix))
        return self.matrix[(m, n)]

    def clear_above(self, degree: int) -> int:
        """Drop every entry with ``m + n > degree``; return how many were dropped."""
        with self._lock:
            doomed = [k for k in self.matrix if k[0] + k[1] > degree]
            for k in doomed:
                del self.matrix[k]
        return len(doomed)


def commute_cached(cache: CommuteCache, alg: AlgebraParams, m: int, n: int) -> NcPoly:
    if cache.algebra != alg:
        raise AlgebraMismatch("cache belongs to a different algebra")
    return cache.get(m, n)


# --------------------------------------------------------------------------- #
# Multiplication
# --------------------------------------------------------------------------- #


def mul(f: NcPoly, g: NcPoly, engine: Engine = Engine.AUTO, cache: CommuteCache | None = None) -> NcPoly:
    """
    Product of two normal forms:
    ``(x^a y^b)(x^c y^d) = x^a (y^b x^c) y^d`` with the middle factor from
    ``cache`` when given, otherwise from ``engine``.
    """
    if f.algebra != g.algebra:
        raise AlgebraMismatch(f"{f.algebra} and {g.algebra} differ")
    alg = f.algebra
    if cache is not None and cache.algebra != alg:
        raise AlgebraMismatch("cache belongs to a different algebra")
    middle: dict[Monomial, Mapping[Monomial, Any]] = {}
    out: Terms = {}
    for (a, b), c1 in f._terms.items():
        for (c, d), c2 in g._terms.items():
            coeff = c1 * c2
            if b == 0 or c == 0:
                if a + c + b + d > MAX_DEGREE:
                    raise DegreeOverflow("product exceeds the degree cap")
                _add_terms(out, {(a + c, b + d): coeff})
                continue
            if (b, c) not in middle:
                entry = cache.get(b, c) if cache is not None else commute(alg, b, c, engine)
                middle[(b, c)] = entry._terms
            shifted = {(a + e, h + d): v for (e, h), v in middle[(b, c)].items()}
            _add_terms(out, shifted, coeff)
    return NcPoly._wrap(alg, out)


def pow(f: NcPoly, n: int, engine: Engine = Engine.AUTO, cache: CommuteCache | None = None) -> NcPoly:  # noqa: A001
    if n < 0:
        raise ValueError("negative power of a non-commutative polynomial")
    result = NcPoly.one(f.algebra)
    for _ in range(n):
        result = mul(result, f, engine, cache)
    return result


def leading_monomial(f: NcPoly) -> Monomial | None:
    """Largest monomial under degree-then-x-degree order; ``None`` for zero."""
    if f.is_zero():
        return None
    return f.monomials()[0]


def term_count(alg: AlgebraParams, i: int) -> int:
    """Number of terms of ``y^i · x``."""
    return len(commute(alg, i, 1))


def q_commutator(a: NcPoly, b: NcPoly, q: Any) -> NcPoly:
    """``[a, b]_q = ab - q·ba``."""
    return a * b - (b * a).scale(q)


def commutator(a: NcPoly, b: NcPoly) -> NcPoly:
    return a * b - b * a
