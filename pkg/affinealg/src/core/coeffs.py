# affinealg/src/core/coeffs.py
"""
coeffs.py – exact coefficient fields for every algebra in the package.

Three field modes are supported and never mixed inside one computation:

* **QQ** – big rationals, represented by :class:`fractions.Fraction`.
* **QQ(q, alpha, beta, gamma)** – rational functions in the four algebra
  parameters, represented by :class:`ParamRat`.
* **GF(p)** – prime fields for machine-word primes, :class:`GFElem`.

Plain Python ``int`` values act as universal scalars and are accepted by
every mode.  A :class:`FieldMode` value describes a mode and converts
scalars into it.

ParamRat denominators
---------------------
A :class:`ParamRat` keeps its numerator expanded but its denominator as a
product of primitive *atoms* (``q``, ``alpha``, ``q - 1``,
``q*gamma - gamma - alpha*beta`` …) with exponents.  Sums then use the
least common multiple of the atom powers, which keeps the denominators
that occur in this package (products of powers of ``1 - q``, ``alpha``,
``beta``, ``gamma`` and ``gamma*(1 - q) + alpha*beta``) small without a
multivariate gcd.  A denominator none of the known atoms divide is split into
irreducible factors with sympy.  Equality is a zero test of the cross-multiplied
numerator; :func:`simplify` removes atoms that divide the numerator.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Any, Final, Iterable, Mapping, Sequence, Union

import sympy

from src.core.errors import (
    DenominatorVanishes,
    DivisionByZero,
    InvalidParameters,
    MissingSymbol,
    MixedFieldModes,
)

# --------------------------------------------------------------------------- #
# Constants
# --------------------------------------------------------------------------- #

#: Parameter symbols, in the order used by exponent vectors.
SYMBOLS: Final[tuple[str, str, str, str]] = ("q", "alpha", "beta", "gamma")

Exponent = tuple[int, int, int, int]
Rational = Union[int, Fraction]

_ZERO_EXP: Final[Exponent] = (0, 0, 0, 0)

#: Largest prime accepted for GF(p).
_MAX_PRIME: Final[int] = 2**63 - 1

#: Modulus and evaluation point used to hash rational functions.
_HASH_MODULUS: Final[int] = 2**61 - 1
_HASH_POINT: Final[Exponent] = (1_000_003, 7_919, 104_729, 1_299_709)


def _clean(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _is_rational(value: object) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


# --------------------------------------------------------------------------- #
# ParamPoly
# --------------------------------------------------------------------------- #


class ParamPoly:
    """
    Polynomial in ``q, alpha, beta, gamma`` with rational coefficients.

    Terms are a map from dense exponent 4-tuples to nonzero ``int`` or
    ``Fraction`` coefficients.  Instances are immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Sequence[int], Rational] | None = None) -> None:
        clean: dict[Exponent, Rational] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != 4 or min(exp) < 0:
                raise ValueError(f"bad exponent vector {exp!r}")
            c = _clean(Fraction(c)) if not isinstance(c, int) else c
            if c:
                clean[exp] = clean.get(exp, 0) + c  # type: ignore[index]
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _wrap(cls, terms: dict[Exponent, Rational]) -> "ParamPoly":
        obj = object.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def constant(cls, c: Rational) -> "ParamPoly":
        return cls({_ZERO_EXP: c}) if c else cls._wrap({})

    @classmethod
    def symbol(cls, name: str) -> "ParamPoly":
        try:
            i = SYMBOLS.index(name)
        except ValueError:
            raise MissingSymbol(f"unknown parameter symbol {name!r}") from None
        exp = [0, 0, 0, 0]
        exp[i] = 1
        return cls._wrap({tuple(exp): 1})  # type: ignore[dict-item]

    # ---------- inspection ------------------------------------------------- #

    @property
    def terms(self) -> Mapping[Exponent, Rational]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant_value(self) -> Rational | None:
        """The value of a constant polynomial, ``None`` otherwise."""
        if not self._terms:
            return 0
        if self.is_constant():
            return self._terms[_ZERO_EXP]
        return None

    def leading_exponent(self) -> Exponent:
        return max(self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def symbols(self) -> frozenset[str]:
        used = set()
        for exp in self._terms:
            used.update(SYMBOLS[i] for i, e in enumerate(exp) if e)
        return frozenset(used)

    # ---------- arithmetic ------------------------------------------------- #

    def __add__(self, other: object) -> "ParamPoly":
        other_p = _as_poly(other)
        if other_p is None:
            return NotImplemented
        res = dict(self._terms)
        for e, c in other_p._terms.items():
            v = res.get(e, 0) + c
            if v:
                res[e] = _clean(v)
            else:
                res.pop(e, None)
        return ParamPoly._wrap(res)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "ParamPoly":
        other_p = _as_poly(other)
        if other_p is None:
            return NotImplemented
        return self + (-other_p)

    def __rsub__(self, other: object) -> "ParamPoly":
        return (-self) + other

    def scale(self, c: Rational) -> "ParamPoly":
        if not c:
            return ParamPoly._wrap({})
        return ParamPoly._wrap({e: _clean(v * c) for e, v in self._terms.items()})

    def __mul__(self, other: object) -> "ParamPoly":
        if _is_rational(other):
            return self.scale(other)  # type: ignore[arg-type]
        if not isinstance(other, ParamPoly):
            return NotImplemented
        if len(other._terms) < len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        res: dict[Exponent, Rational] = {}
        for (q1, a1, b1, g1), c1 in a.items():
            for (q2, a2, b2, g2), c2 in b.items():
                k = (q1 + q2, a1 + a2, b1 + b2, g1 + g2)
                v = res.get(k)
                res[k] = c1 * c2 if v is None else v + c1 * c2
        return ParamPoly._wrap({e: _clean(c) for e, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ParamPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ParamPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, divisor: "ParamPoly") -> "ParamPoly | None":
        """
        Return ``self / divisor`` when the division is exact, else ``None``.

        Single-divisor multivariate division under the lexicographic order:
        the leading term of every remainder must be divisible by the
        divisor's leading term.
        """
        if divisor.is_zero():
            raise DivisionByZero("division of a polynomial by zero")
        rem = dict(self._terms)
        lead = divisor.leading_exponent()
        lead_c = Fraction(divisor._terms[lead])
        quotient: dict[Exponent, Rational] = {}
        while rem:
            e = max(rem)
            diff = (e[0] - lead[0], e[1] - lead[1], e[2] - lead[2], e[3] - lead[3])
            if min(diff) < 0:
                return None
            c = _clean(rem[e] / lead_c)
            quotient[diff] = c
            for de, dc in divisor._terms.items():
                k = (de[0] + diff[0], de[1] + diff[1], de[2] + diff[2], de[3] + diff[3])
                v = rem.get(k, 0) - c * dc
                if v:
                    rem[k] = _clean(v)
                else:
                    rem.pop(k, None)
        return ParamPoly._wrap(quotient)

    def content(self) -> tuple[Fraction, Exponent]:
        """Rational content (positive) and monomial content of the terms."""
        if not self._terms:
            return Fraction(0), _ZERO_EXP
        num_gcd = 0
        den_lcm = 1
        for c in self._terms.values():
            f = Fraction(c)
            num_gcd = math.gcd(num_gcd, f.numerator)
            den_lcm = den_lcm * f.denominator // math.gcd(den_lcm, f.denominator)
        mono = tuple(min(e[i] for e in self._terms) for i in range(4))
        return Fraction(num_gcd, den_lcm), mono  # type: ignore[return-value]

    def shift(self, exp: Sequence[int], sign: int = 1) -> "ParamPoly":
        """Multiply (``sign=1``) or exactly divide (``sign=-1``) by a monomial."""
        return ParamPoly._wrap(
            {
                tuple(a + sign * b for a, b in zip(e, exp)): c  # type: ignore[misc]
                for e, c in self._terms.items()
            }
        )

    # ---------- evaluation ------------------------------------------------- #

    def evaluate(self, values: Sequence[Any]) -> Any:
        """
        Evaluate with ``values[i]`` substituted for ``SYMBOLS[i]``.

        The values may be ints, Fractions, :class:`GFElem` or
        :class:`ParamRat`; symbols that do not occur may be ``None``.
        """
        powers: list[dict[int, Any]] = [{}, {}, {}, {}]
        result: Any = 0
        for exp, c in self._terms.items():
            term: Any = c
            for i, e in enumerate(exp):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = values[i] ** e
                    term = cache[e] * term
            result = term + result
        return result

    def _eval_mod(self, point: Exponent, modulus: int) -> int:
        total = 0
        for exp, c in self._terms.items():
            f = Fraction(c)
            v = f.numerator * pow(f.denominator, -1, modulus)
            for x, e in zip(point, exp):
                if e:
                    v = v * pow(x, e, modulus)
            total = (total + v) % modulus
        return total

    # ---------- comparison & printing -------------------------------------- #

    def __eq__(self, other: object) -> bool:
        other_p = _as_poly(other)
        if other_p is None:
            return NotImplemented
        return self._terms == other_p._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp in sorted(self._terms, reverse=True):
            parts.append(_format_term(self._terms[exp], exp))
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self) -> str:
        return f"ParamPoly({self})"


def _format_term(c: Rational, exp: Exponent) -> str:
    mono = "*".join(
        SYMBOLS[i] if e == 1 else f"{SYMBOLS[i]}^{e}" for i, e in enumerate(exp) if e
    )
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _as_poly(value: object) -> ParamPoly | None:
    if isinstance(value, ParamPoly):
        return value
    if _is_rational(value):
        return ParamPoly.constant(value)  # type: ignore[arg-type]
    return None


# --------------------------------------------------------------------------- #
# Denominator atoms
# --------------------------------------------------------------------------- #


def _primitive(poly: ParamPoly) -> tuple[Fraction, Exponent, ParamPoly]:
    """Split ``poly = c * monomial * prim`` with prim primitive, positive lead."""
    c, mono = poly.content()
    prim = poly.shift(mono, -1).scale(1 / c)
    if Fraction(prim.terms[prim.leading_exponent()]) < 0:
        c, prim = -c, -prim
    return c, mono, prim


def _normalise_atom(poly: ParamPoly) -> ParamPoly:
    return _primitive(poly)[2]


_SYMBOL_ATOMS: Final[tuple[ParamPoly, ...]] = tuple(ParamPoly.symbol(s) for s in SYMBOLS)

#: Non-monomial factors tried first whenever a polynomial becomes a denominator.
STANDARD_ATOMS: Final[tuple[ParamPoly, ...]] = (
    _normalise_atom(ParamPoly({(1, 0, 0, 0): 1, _ZERO_EXP: -1})),  # q - 1
    _normalise_atom(  # gamma*(1 - q) + alpha*beta
        ParamPoly({(0, 0, 0, 1): 1, (1, 0, 0, 1): -1, (0, 1, 1, 0): 1})
    ),
)


@lru_cache(maxsize=1024)
def _atom_power(atom: ParamPoly, e: int) -> ParamPoly:
    return atom**e


_SYMPY_GENS: Final = sympy.symbols(SYMBOLS)


def _from_sympy_rational(c: Any) -> Fraction:
    return Fraction(int(c.p), int(c.q))


@lru_cache(maxsize=512)
def _irreducible_factors(poly: ParamPoly) -> tuple[Fraction, tuple[tuple[ParamPoly, int], ...]]:
    """Factor ``poly`` over QQ with sympy; returns the constant and the irreducible factors."""
    rep = {exp: sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for exp, c in poly.terms.items()}
    const, parts = sympy.Poly.from_dict(rep, *_SYMPY_GENS, domain="QQ").factor_list()
    factors = tuple(
        (ParamPoly({exp: _from_sympy_rational(c) for exp, c in part.as_dict().items()}), e) for part, e in parts
    )
    return _from_sympy_rational(sympy.Rational(const)), factors


def _factor(poly: ParamPoly, known: Iterable[ParamPoly]) -> tuple[Fraction, dict[ParamPoly, int]]:
    """Write ``poly`` as ``c * prod(atom**e)`` trying the ``known`` atoms first."""
    c, mono, prim = _primitive(poly)
    factors: dict[ParamPoly, int] = {
        _SYMBOL_ATOMS[i]: e for i, e in enumerate(mono) if e
    }
    for atom in known:
        if prim.is_constant():
            break
        if atom in _SYMBOL_ATOMS:
            continue
        while not prim.is_constant():
            quotient = prim.exact_div(atom)
            if quotient is None:
                break
            factors[atom] = factors.get(atom, 0) + 1
            prim = quotient
    if prim.is_constant():
        c *= Fraction(prim.constant_value())  # type: ignore[arg-type]
    else:
        c2, parts = _irreducible_factors(prim)
        c *= c2
        for part, e in parts:
            pc, _, atom = _primitive(part)
            c *= pc**e
            factors[atom] = factors.get(atom, 0) + e
    return c, factors


# --------------------------------------------------------------------------- #
# ParamRat
# --------------------------------------------------------------------------- #

_EMPTY: Final[dict] = {}


class ParamRat:
    """
    Element of QQ(q, alpha, beta, gamma): expanded numerator over a
    factored denominator.  Immutable.
    """

    __slots__ = ("num", "_den", "_hash")

    def __init__(self, num: ParamPoly | Rational = 0, den: ParamPoly | Rational = 1) -> None:
        num_p = _as_poly(num)
        den_p = _as_poly(den)
        if num_p is None or den_p is None:
            raise TypeError("ParamRat expects polynomials or rational scalars")
        if den_p.is_zero():
            raise DivisionByZero("zero denominator")
        c, factors = _factor(den_p, STANDARD_ATOMS)
        made = ParamRat._make(num_p.scale(1 / c), factors)
        self.num, self._den, self._hash = made.num, made._den, None

    @classmethod
    def _make(cls, num: ParamPoly, den: Mapping[ParamPoly, int]) -> "ParamRat":
        obj = object.__new__(cls)
        obj._hash = None
        if num.is_zero():
            obj.num, obj._den = num, _EMPTY
            return obj
        den = {a: e for a, e in den.items() if e}
        if den:
            _, mono = num.content()
            drop = [0, 0, 0, 0]
            for i, atom in enumerate(_SYMBOL_ATOMS):
                e = den.get(atom, 0)
                k = min(e, mono[i])
                if k:
                    drop[i] = k
                    den[atom] = e - k
            if any(drop):
                num = num.shift(drop, -1)
                den = {a: e for a, e in den.items() if e}
        obj.num, obj._den = num, (den or _EMPTY)
        return obj

    @classmethod
    def constant(cls, c: Rational) -> "ParamRat":
        return cls._make(ParamPoly.constant(c), _EMPTY)

    @classmethod
    def symbol(cls, name: str) -> "ParamRat":
        return cls._make(ParamPoly.symbol(name), _EMPTY)

    # ---------- inspection ------------------------------------------------- #

    @property
    def den_factors(self) -> Mapping[ParamPoly, int]:
        return MappingProxyType(self._den)

    @property
    def den(self) -> ParamPoly:
        out = ParamPoly.constant(1)
        for atom, e in self._den.items():
            out = out * _atom_power(atom, e)
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self._den

    def constant_value(self) -> Rational | None:
        if self._den:
            return None
        return self.num.constant_value()

    def symbols(self) -> frozenset[str]:
        out = set(self.num.symbols())
        for atom in self._den:
            out |= atom.symbols()
        return frozenset(out)

    def is_symbol(self, name: str) -> bool:
        return not self._den and self.num == ParamPoly.symbol(name)

    # ---------- arithmetic ------------------------------------------------- #

    def __add__(self, other: object) -> "ParamRat":
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        if not o.num._terms:
            return self
        if not self.num._terms:
            return o
        if self._den == o._den:
            return ParamRat._make(self.num + o.num, dict(self._den))
        lcm = dict(self._den)
        for atom, e in o._den.items():
            if e > lcm.get(atom, 0):
                lcm[atom] = e
        return ParamRat._make(self._lift(lcm) + o._lift(lcm), lcm)

    __radd__ = __add__

    def _lift(self, lcm: Mapping[ParamPoly, int]) -> ParamPoly:
        num = self.num
        for atom, e in lcm.items():
            missing = e - self._den.get(atom, 0)
            if missing:
                num = num * _atom_power(atom, missing)
        return num

    def __neg__(self) -> "ParamRat":
        return ParamRat._make(-self.num, dict(self._den))

    def __sub__(self, other: object) -> "ParamRat":
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "ParamRat":
        return (-self) + other

    def __mul__(self, other: object) -> "ParamRat":
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        if not self._den and not o._den:
            return ParamRat._make(self.num * o.num, _EMPTY)
        den = dict(self._den)
        for atom, e in o._den.items():
            den[atom] = den.get(atom, 0) + e
        return ParamRat._make(self.num * o.num, den)

    __rmul__ = __mul__

    def inverse(self) -> "ParamRat":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero in QQ(q,alpha,beta,gamma)")
        known = list(self._den) + [a for a in STANDARD_ATOMS if a not in self._den]
        c, factors = _factor(self.num, known)
        return ParamRat._make(self.den.scale(1 / c), factors)

    def __truediv__(self, other: object) -> "ParamRat":
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "ParamRat":
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "ParamRat":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ParamRat.constant(1)
        den = {a: e * n for a, e in self._den.items()}
        return ParamRat._make(self.num**n, den)

    # ---------- comparison ------------------------------------------------- #

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        return (self - o).num.is_zero()

    def __hash__(self) -> int:
        if self._hash is None:
            den = self.den._eval_mod(_HASH_POINT, _HASH_MODULUS)
            if den == 0:
                self._hash = hash("ParamRat:degenerate")
            else:
                num = self.num._eval_mod(_HASH_POINT, _HASH_MODULUS)
                self._hash = hash(num * pow(den, -1, _HASH_MODULUS) % _HASH_MODULUS)
        return self._hash

    # ---------- printing --------------------------------------------------- #

    def __str__(self) -> str:
        if not self._den:
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        atoms = []
        for atom in sorted(self._den, key=str):
            text = str(atom)
            if len(atom.terms) > 1:
                text = f"({text})"
            e = self._den[atom]
            atoms.append(text if e == 1 else f"{text}^{e}")
        den = "*".join(atoms)
        if len(atoms) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"ParamRat({self})"


def _as_rat(value: object) -> ParamRat | None:
    if isinstance(value, ParamRat):
        return value
    if _is_rational(value):
        return ParamRat.constant(value)  # type: ignore[arg-type]
    if isinstance(value, ParamPoly):
        return ParamRat._make(value, _EMPTY)
    if isinstance(value, GFElem):
        raise MixedFieldModes("GF(p) element combined with a rational function")
    return None


def simplify(x: ParamRat) -> ParamRat:
    """
    Return an equal ParamRat with monomial content cancelled and every
    denominator atom that divides the numerator removed.
    """
    if not isinstance(x, ParamRat):
        return x
    num = x.num
    den = dict(x._den)
    for atom in list(den):
        if atom in _SYMBOL_ATOMS:
            continue
        while den[atom] and not num.is_zero():
            quotient = num.exact_div(atom)
            if quotient is None:
                break
            num = quotient
            den[atom] -= 1
    return ParamRat._make(num, den)


# --------------------------------------------------------------------------- #
# GF(p)
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class GFElem:
    """Residue ``value`` modulo the prime ``p``."""

    value: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: object) -> "GFElem | None":
        if isinstance(other, GFElem):
            if other.p != self.p:
                raise MixedFieldModes(f"GF({self.p}) combined with GF({other.p})")
            return other
        if isinstance(other, bool):
            return None
        if isinstance(other, int):
            return GFElem(other, self.p)
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise DenominatorVanishes(f"{other} has no image in GF({self.p})")
            return GFElem(other.numerator * pow(other.denominator, -1, self.p), self.p)
        if isinstance(other, (ParamRat, ParamPoly)):
            raise MixedFieldModes("rational function combined with a GF(p) element")
        return None

    def __add__(self, other: object) -> "GFElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElem(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other: object) -> "GFElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElem(self.value - o.value, self.p)

    def __rsub__(self, other: object) -> "GFElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElem(o.value - self.value, self.p)

    def __neg__(self) -> "GFElem":
        return GFElem(-self.value, self.p)

    def __mul__(self, other: object) -> "GFElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElem(self.value * o.value, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "GFElem":
        if self.value == 0:
            raise DivisionByZero(f"inverse of zero in GF({self.p})")
        return GFElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other: object) -> "GFElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "GFElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "GFElem":
        if n < 0:
            return self.inverse() ** (-n)
        return GFElem(pow(self.value, n, self.p), self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        try:
            o = self._coerce(other)
        except (MixedFieldModes, DenominatorVanishes):
            return False
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return str(self.value)

    def multiplicative_order(self) -> int:
        """Smallest ``k > 0`` with ``self**k == 1``."""
        if self.value == 0:
            raise DivisionByZero("zero has no multiplicative order")
        k, acc = 1, self.value
        while acc != 1:
            acc = acc * self.value % self.p
            k += 1
        return k


# --------------------------------------------------------------------------- #
# Field modes
# --------------------------------------------------------------------------- #


class FieldKind(enum.Enum):
    RATIONAL = "QQ"
    FUNCTION = "QQ(q,alpha,beta,gamma)"
    PRIME = "GF"


@dataclass(frozen=True)
class FieldMode:
    """Descriptor of a coefficient field; ``p`` is set only for GF(p)."""

    kind: FieldKind
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind is FieldKind.PRIME:
            if self.p is None or not (1 < self.p <= _MAX_PRIME) or not sympy.isprime(self.p):
                raise InvalidParameters(f"GF(p) needs a machine-word prime, got {self.p!r}")
        elif self.p is not None:
            raise InvalidParameters("only GF(p) modes carry a prime")

    @classmethod
    def rational(cls) -> "FieldMode":
        return cls(FieldKind.RATIONAL)

    @classmethod
    def function_field(cls) -> "FieldMode":
        return cls(FieldKind.FUNCTION)

    @classmethod
    def prime(cls, p: int) -> "FieldMode":
        return cls(FieldKind.PRIME, p)

    @property
    def characteristic(self) -> int:
        return self.p if self.kind is FieldKind.PRIME else 0  # type: ignore[return-value]

    @property
    def zero(self) -> Any:
        return self.coerce(0)

    @property
    def one(self) -> Any:
        return self.coerce(1)

    def coerce(self, value: Any) -> Any:
        """Convert ``value`` into this field or raise :class:`MixedFieldModes`."""
        if self.kind is FieldKind.RATIONAL:
            if _is_rational(value):
                return Fraction(value)
            if isinstance(value, ParamRat) and value.constant_value() is not None:
                return Fraction(value.constant_value())  # type: ignore[arg-type]
        elif self.kind is FieldKind.FUNCTION:
            if isinstance(value, ParamRat):
                return value
            if _is_rational(value) or isinstance(value, ParamPoly):
                return _as_rat(value)
        else:
            if isinstance(value, GFElem) and value.p == self.p:
                return value
            if _is_rational(value):
                return GFElem(0, self.p)._coerce(value)  # type: ignore[arg-type]
        raise MixedFieldModes(f"{value!r} is not an element of {self}")

    def owns(self, value: Any) -> bool:
        if self.kind is FieldKind.RATIONAL:
            return isinstance(value, Fraction)
        if self.kind is FieldKind.FUNCTION:
            return isinstance(value, ParamRat)
        return isinstance(value, GFElem) and value.p == self.p

    def symbol(self, name: str) -> ParamRat:
        if self.kind is not FieldKind.FUNCTION:
            raise InvalidParameters(f"symbol {name!r} only exists in {FieldKind.FUNCTION.value}")
        return ParamRat.symbol(name)

    def parse_scalar(self, text: str) -> Any:
        """Parse ``"p/r"`` (or, in the function field, a parameter name)."""
        text = text.strip()
        if text in SYMBOLS and self.kind is FieldKind.FUNCTION:
            return ParamRat.symbol(text)
        try:
            return self.coerce(Fraction(text))
        except (ValueError, ZeroDivisionError):
            raise InvalidParameters(f"not an exact rational: {text!r}") from None

    def __str__(self) -> str:
        if self.kind is FieldKind.PRIME:
            return f"GF({self.p})"
        return self.kind.value


def mode_of(value: Any) -> FieldMode | None:
    """The field mode of ``value``; ``None`` for plain integers."""
    if isinstance(value, GFElem):
        return FieldMode.prime(value.p)
    if isinstance(value, (ParamRat, ParamPoly)):
        return FieldMode.function_field()
    if isinstance(value, Fraction):
        return FieldMode.rational()
    if isinstance(value, int):
        return None
    raise MixedFieldModes(f"{value!r} is not a field element")


def one_like(value: Any) -> Any:
    """Multiplicative identity of the field ``value`` lives in."""
    if isinstance(value, GFElem):
        return GFElem(1, value.p)
    if isinstance(value, ParamRat):
        return ParamRat.constant(1)
    if isinstance(value, Fraction):
        return Fraction(1)
    return 1


def is_zero(value: Any) -> bool:
    return not value


# --------------------------------------------------------------------------- #
# field_ops
# --------------------------------------------------------------------------- #


def _check_modes(a: Any, b: Any) -> None:
    ma, mb = mode_of(a), mode_of(b)
    if ma is None or mb is None or ma == mb:
        return
    # QQ embeds in the function field; integers embed everywhere.
    kinds = {ma.kind, mb.kind}
    if kinds == {FieldKind.RATIONAL, FieldKind.FUNCTION}:
        return
    raise MixedFieldModes(f"cannot combine {ma} and {mb}")


def add(a: Any, b: Any) -> Any:
    _check_modes(a, b)
    return a + b


def sub(a: Any, b: Any) -> Any:
    _check_modes(a, b)
    return a - b


def mul(a: Any, b: Any) -> Any:
    _check_modes(a, b)
    return a * b


def neg(a: Any) -> Any:
    return -a


def inv(a: Any) -> Any:
    if not a:
        raise DivisionByZero("inverse of zero")
    if isinstance(a, (GFElem, ParamRat)):
        return a.inverse()
    return 1 / Fraction(a)


def div(a: Any, b: Any) -> Any:
    _check_modes(a, b)
    if not b:
        raise DivisionByZero("division by zero")
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a * inv(b)


def eq(a: Any, b: Any) -> bool:
    _check_modes(a, b)
    return not (a - b)


# --------------------------------------------------------------------------- #
# Specialisation
# --------------------------------------------------------------------------- #


def specialize(
    x: ParamRat | Rational,
    assignment: Mapping[str, Any],
    field: FieldMode | None = None,
) -> Any:
    """
    Evaluate ``x`` at the values in ``assignment`` (symbol name → value).

    The result lives in ``field`` when given, otherwise in the field of the
    assigned values (QQ when they are all rational).

    Raises
    ------
    MissingSymbol
        A symbol occurring in ``x`` has no value.
    DenominatorVanishes
        The denominator evaluates to zero.
    """
    if not isinstance(x, ParamRat):
        x = ParamRat.constant(x)
    missing = x.symbols() - set(assignment)
    if missing:
        raise MissingSymbol(f"no value for {', '.join(sorted(missing))}")
    if field is None:
        field = FieldMode.rational()
        for v in assignment.values():
            mode = mode_of(v)
            if mode is not None and mode.kind is not FieldKind.RATIONAL:
                field = mode
                break
    values = [field.coerce(assignment[s]) if s in assignment else None for s in SYMBOLS]
    num = field.coerce(x.num.evaluate(values))
    den = field.one
    for atom, e in x.den_factors.items():
        den = den * field.coerce(atom.evaluate(values)) ** e
    if not den:
        raise DenominatorVanishes(f"denominator of {x} vanishes at {dict(assignment)}")
    return num / den
