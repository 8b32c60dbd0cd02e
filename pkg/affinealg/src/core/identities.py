# affinealg/src/core/identities.py
"""
Binomial-type theorems and the misordering index of words in {a, b}.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction
from typing import Any

from src.core.algebra import AlgebraParams, ModelClass, model_params
from src.core.coeffs import FieldMode
from src.core.ncpoly import Engine, NcPoly, mul, pow
from src.core.qcomb import binomial, double_fact_even, q_binomial, stirling2

Word = str


def bracket_pow(u: NcPoly, v: NcPoly, n: int, q: Any = None) -> NcPoly:
    """
    ``[u + v]^n = sum C(n, i) u^i v^(n-i)``, or the Gaussian-binomial version
    ``[u + v]_q^n`` when ``q`` is given.  No commutation is applied between
    the ``u`` and ``v`` blocks.
    """
    alg = u.algebra
    out = NcPoly.zero(alg)
    for i in range(n + 1):
        c = q_binomial(n, i, q) if q is not None else binomial(n, i)
        block = mul(pow(u, i), pow(v, n - i))
        out = out + block.scale(alg.field.coerce(c))
    return out


def _weyl(field: FieldMode | None) -> AlgebraParams:
    return model_params(ModelClass.WEYL, field or FieldMode.rational())


def _shift(field: FieldMode | None) -> AlgebraParams:
    return model_params(ModelClass.SHIFT, field or FieldMode.rational())


def weyl_binomial_defect(n: int, field: FieldMode | None = None) -> NcPoly:
    """``(x + d)^n - [x + d]^n`` in the Weyl algebra (``d`` is written y)."""
    alg = _weyl(field)
    terms: dict[tuple[int, int], int] = {}
    for k in range(n - 1):
        for j in range(n - k - 1):
            c = binomial(n, j) * binomial(n - j, k) * double_fact_even(n - j - k)
            if c:
                terms[(k, j)] = c
    return NcPoly(alg, terms)


def weyl_binomial_defect_alt(n: int, field: FieldMode | None = None) -> NcPoly:
    """The same defect written with ``n! / (j! k! h!) · 2^-h`` for ``n - j - k = 2h``."""
    alg = _weyl(field)
    terms: dict[tuple[int, int], Fraction] = {}
    for k in range(n - 1):
        for j in range(n - k - 1):
            rest = n - j - k
            if rest % 2:
                continue
            h = rest // 2
            c = Fraction(math.factorial(n), math.factorial(j) * math.factorial(k) * math.factorial(h))
            terms[(k, j)] = c / 2**h
    return NcPoly(alg, terms)


def shift_binomial(n: int, field: FieldMode | None = None) -> NcPoly:
    """``(x + s)^n`` in the shift algebra (``s`` is written y) via Stirling numbers."""
    alg = _shift(field)
    x, s = NcPoly.x(alg), NcPoly.y(alg)
    correction: dict[tuple[int, int], int] = {}
    for k in range(n):
        for j in range(n - k):
            c = binomial(n, k) * stirling2(n - k, j)
            if c:
                correction[(k, j)] = c
    return bracket_pow(x, s, n) + NcPoly(alg, correction)


def weyl_power_defect(n: int, field: FieldMode | None = None, engine: Engine = Engine.AUTO) -> NcPoly:
    """``(x + d)^n - [x + d]^n`` computed by multiplication."""
    alg = _weyl(field)
    x, d = NcPoly.x(alg), NcPoly.y(alg)
    return pow(x + d, n, engine) - bracket_pow(x, d, n)


# --------------------------------------------------------------------------- #
# Words
# --------------------------------------------------------------------------- #


def _check_word(w: Word) -> None:
    bad = set(w) - {"a", "b"}
    if bad:
        raise ValueError(f"word {w!r} uses letters outside {{a, b}}: {sorted(bad)}")


def misordering_index(w: Word) -> int:
    """Number of pairs ``i < j`` with ``w[i] == 'b'`` and ``w[j] == 'a'``."""
    _check_word(w)
    seen_b = 0
    index = 0
    for letter in w:
        if letter == "b":
            seen_b += 1
        else:
            index += seen_b
    return index


def misordering_index_by_swaps(w: Word) -> int:
    """Count the exchanges ``ba -> ab``, always taking the last misordered pair."""
    _check_word(w)
    letters = list(w)
    swaps = 0
    while True:
        pos = "".join(letters).rfind("ba")
        if pos < 0:
            return swaps
        letters[pos], letters[pos + 1] = "a", "b"
        swaps += 1


def converge(w: Word) -> tuple[tuple[int, int], int]:
    """The standard word ``a^i b^j`` that ``w`` converges to, and the index."""
    _check_word(w)
    return (w.count("a"), w.count("b")), misordering_index(w)


def free_expansion(n: int) -> Counter[tuple[int, int]]:
    """Multiplicity of each standard target over all ``2^n`` words of length ``n``."""
    targets: Counter[tuple[int, int]] = Counter()
    for letters in itertools.product("ab", repeat=n):
        target, _ = converge("".join(letters))
        targets[target] += 1
    return targets
