# affinealg/src/core/center.py
"""
Centrality checks and degree-bounded centralizers and centers.

Within a :class:`DegreeWindow` the unknown element is ``sum c_ab x^a y^b``
over all monomials of total degree at most ``D``.  ``[f, g] = 0`` is linear
in the ``c_ab``; the solution space is found by exact Gauss–Jordan
elimination in the algebra's coefficient field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from src.core.algebra import AlgebraParams
from src.core.coeffs import simplify
from src.core.errors import GradingUndefined
from src.core.ncpoly import Monomial, NcPoly, commutator
from src.utils.logging import get_logger

log = get_logger(__name__)


@dataclass(frozen=True)
class DegreeWindow:
    max_degree: int

    def __post_init__(self) -> None:
        if self.max_degree < 0:
            raise ValueError("degree window must be non-negative")

    def monomials(self) -> list[Monomial]:
        """All ``(a, b)`` with ``a + b <= D``, smallest first."""
        return [(a, d - a) for d in range(self.max_degree + 1) for a in range(d + 1)]

    def __len__(self) -> int:
        d = self.max_degree
        return (d + 1) * (d + 2) // 2


def is_central(f: NcPoly) -> bool:
    alg = f.algebra
    return commutator(f, NcPoly.x(alg)).is_zero() and commutator(f, NcPoly.y(alg)).is_zero()


def _nullspace(rows: list[list[Any]], ncols: int, zero: Any, one: Any) -> list[list[Any]]:
    """Basis of ``{v : rows · v = 0}``; each vector is 1 at its own free column."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = one / m[r][col]
        m[r] = [simplify(v * inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [simplify(a - factor * b) for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][f]
        basis.append(vec)
    return basis


def _solve(alg: AlgebraParams, gens: list[NcPoly], window: DegreeWindow) -> list[NcPoly]:
    monos = window.monomials()
    equations: dict[tuple[int, Monomial], list[Any]] = {}
    for col, (a, b) in enumerate(monos):
        basis_elem = NcPoly.monomial(alg, a, b)
        for gi, g in enumerate(gens):
            for mono, c in commutator(basis_elem, g).terms.items():
                row = equations.setdefault((gi, mono), [alg.zero] * len(monos))
                row[col] = c
    rows = [equations[k] for k in sorted(equations)]
    vectors = _nullspace(rows, len(monos), alg.zero, alg.one)
    log.debug("window %d: %d equations, %d solutions", window.max_degree, len(rows), len(vectors))
    return [NcPoly(alg, dict(zip(monos, vec))) for vec in vectors]


def centralizer_basis(g: NcPoly, window: DegreeWindow) -> list[NcPoly]:
    """Basis of ``{f : fg = gf, deg f <= D}``, in echelon form with leading coefficient 1."""
    return _solve(g.algebra, [g], window)


def center_basis(alg: AlgebraParams, window: DegreeWindow) -> list[NcPoly]:
    """Basis of the central elements of degree at most ``D``."""
    return _solve(alg, [NcPoly.x(alg), NcPoly.y(alg)], window)


# --------------------------------------------------------------------------- #
# Z-grading
# --------------------------------------------------------------------------- #


def grading(alg: AlgebraParams) -> tuple[int, int]:
    """
    Weights ``(deg x, deg y)`` of a Z-grading respected by the relation.

    ``(-1, 1)`` when alpha = beta = 0, ``(0, 1)`` when alpha = gamma = 0 and
    ``(1, 0)`` when beta = gamma = 0.
    """
    if not alg.alpha and not alg.beta:
        return (-1, 1)
    if not alg.alpha and not alg.gamma:
        return (0, 1)
    if not alg.beta and not alg.gamma:
        return (1, 0)
    raise GradingUndefined(f"{alg} has no monomial Z-grading")


def graded_degree(alg: AlgebraParams, a: int, b: int) -> int:
    wx, wy = grading(alg)
    return wx * a + wy * b


def graded_component(alg: AlgebraParams, k: int, window: DegreeWindow) -> list[Monomial]:
    """Monomials of ``window`` spanning the degree-``k`` part ``A_k``."""
    return [(a, b) for a, b in window.monomials() if graded_degree(alg, a, b) == k]


def is_homogeneous(f: NcPoly) -> bool:
    degrees = {graded_degree(f.algebra, a, b) for a, b in f.terms}
    return len(degrees) <= 1
