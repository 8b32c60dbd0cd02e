# affinealg/src/core/qcomb.py
"""
Combinatorial kernels used by the multiplication formulas.

Everything here is division-free: q-numbers are sums of powers, Gaussian
binomials come from the Pascal recurrence and q-falling factorials are
products of q-numbers.  The functions therefore accept ``q`` from any field
mode (an int, a Fraction, a :class:`GFElem` or the symbolic ``q`` as a
:class:`ParamRat`) and specialise cleanly at ``q = 1`` and at roots of unity.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Any

from src.core.coeffs import ParamRat, one_like


def _zero_like(q: Any) -> Any:
    return one_like(q) * 0


def q_number(n: int, q: Any) -> Any:
    """``[n]_q = 1 + q + … + q^(n-1)``; ``[0]_q = 0``."""
    acc = _zero_like(q)
    power = one_like(q)
    for _ in range(n):
        acc = acc + power
        power = power * q
    return acc


def q_factorial(n: int, q: Any) -> Any:
    result = one_like(q)
    for i in range(2, n + 1):
        result = result * q_number(i, q)
    return result


def _pascal_q_binomial(n: int, k: int, q: Any) -> Any:
    one = one_like(q)
    powers = [one]
    for _ in range(k):
        powers.append(powers[-1] * q)
    row = [one]
    for i in range(1, n + 1):
        width = min(i, k) + 1
        new = [one] * width
        for j in range(1, width):
            upper = row[j] if j < len(row) else _zero_like(q)
            new[j] = row[j - 1] + powers[j] * upper
        row = new
    return row[k]


@lru_cache(maxsize=4096)
def _symbolic_q_binomial(n: int, k: int, q: ParamRat) -> ParamRat:
    return _pascal_q_binomial(n, k, q)


def q_binomial(n: int, k: int, q: Any) -> Any:
    """Gaussian binomial ``[n k]_q``; zero when ``k > n`` or ``k < 0``."""
    if k < 0 or k > n:
        return _zero_like(q)
    k = min(k, n - k)
    if isinstance(q, ParamRat):
        return _symbolic_q_binomial(n, k, q)
    return _pascal_q_binomial(n, k, q)


def q_pochhammer(a: Any, n: int, q: Any) -> Any:
    """``(a; q)_n = (1 - a)(1 - a q)…(1 - a q^(n-1))``."""
    result = one_like(q)
    power = one_like(q)
    for _ in range(n):
        result = result * (1 - a * power)
        power = power * q
    return result


def q_falling(n: int, k: int, q: Any) -> Any:
    """``[n]·[n-1]·…·[n-k+1]``; zero when ``k > n``."""
    if k > n:
        return _zero_like(q)
    result = one_like(q)
    for i in range(n - k + 1, n + 1):
        result = result * q_number(i, q)
    return result


# ---- Ordinary integer kernels --------------------------------------------- #


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling(x: Any, k: int) -> Any:
    """Falling factorial ``x(x-1)…(x-k+1)`` for any ring element ``x``."""
    result: Any = 1
    for i in range(k):
        result = result * (x - i)
    return result


@lru_cache(maxsize=None)
def double_fact_even(n: int) -> int:
    """``(n-1)!!`` for even ``n`` (1 at ``n = 0``), zero for odd ``n``."""
    if n % 2:
        return 0
    if n == 0:
        return 1
    return (n - 1) * double_fact_even(n - 2)


@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1) + (0,)
    return tuple(
        (k * prev[k] if k else 0) + (prev[k - 1] if k else 0) for k in range(n + 1)
    )


def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind, ``S(n, k)``."""
    if k < 0 or k > n:
        return 0
    return _stirling2_row(n)[k]
