# affinealg/src/core/errors.py
"""
errors.py – the exception hierarchy shared by every computational module.

Everything raised on purpose by the library derives from
:class:`AffineAlgebraError`, so the command line can tell a computational
failure (exit code 1) from a usage problem (exit code 2) with a single
``except`` clause.  Where a builtin exception type carries the same meaning
the class inherits from it as well, letting callers keep idiomatic
``except ZeroDivisionError`` / ``except ValueError`` handlers.
"""

from __future__ import annotations


class AffineAlgebraError(Exception):
    """Base class for all errors raised by ``src.core`` and ``src.cli``."""


class DivisionByZero(AffineAlgebraError, ZeroDivisionError):
    """A field division or inversion was asked to divide by zero."""


class DenominatorVanishes(DivisionByZero):
    """A rational function was evaluated where its denominator is zero."""


class MixedFieldModes(AffineAlgebraError, TypeError):
    """Elements of two different coefficient fields met in one operation."""


class MissingSymbol(AffineAlgebraError, LookupError):
    """A specialisation did not assign a value to an occurring parameter."""


class InvalidParameters(AffineAlgebraError, ValueError):
    """Malformed algebra parameters (``q = 0``) or field descriptor."""


class AlgebraMismatch(AffineAlgebraError, ValueError):
    """Two polynomials from different algebras were combined."""


class NoClosedFormula(AffineAlgebraError):
    """The table row of the algebra has no closed formula for y^m x^n."""


class NoRecurrence(AffineAlgebraError):
    """The table row has no coefficient recurrence (or it is undefined here)."""


class SingularLinearPart(AffineAlgebraError):
    """An affine substitution with a non-invertible linear part."""


class GradingUndefined(AffineAlgebraError):
    """The relation is not homogeneous for any of the supported gradings."""


class DegreeOverflow(AffineAlgebraError, OverflowError):
    """An exponent exceeded the supported degree cap."""


class UnknownSymbol(AffineAlgebraError, ValueError):
    """An expression referenced a name outside the grammar."""


class ExprSyntaxError(AffineAlgebraError, ValueError):
    """Malformed expression text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position
