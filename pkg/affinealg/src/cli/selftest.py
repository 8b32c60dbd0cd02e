# affinealg/src/cli/selftest.py
"""
Engine-agreement check behind ``affinealg selftest``.

Every table row is run with symbolic parameters; each engine that applies to
a row must reproduce the rewriting oracle for all ``1 <= m, n <= max_degree``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from src.core.algebra import AlgebraParams, row_shape, table_rows
from src.core.errors import NoClosedFormula, NoRecurrence
from src.core.ncpoly import (
    NcPoly,
    commute_formula,
    commute_partial,
    commute_pullback,
    commute_recurrence,
    commute_rewrite,
)
from src.utils.logging import get_logger

log = get_logger(__name__)

_ENGINES: dict[str, Callable[[AlgebraParams, int, int], NcPoly]] = {
    "formula": commute_formula,
    "recurrence": commute_recurrence,
    "partial": commute_partial,
    "pullback": commute_pullback,
}


@dataclass
class RowResult:
    row: str
    checked: int = 0
    mismatches: list[tuple[str, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_row(alg: AlgebraParams, max_degree: int) -> RowResult:
    """Compare every applicable engine with ``commute_rewrite`` on one row."""
    result = RowResult(row_shape(alg))
    for m in range(1, max_degree + 1):
        for n in range(1, max_degree + 1):
            oracle = commute_rewrite(alg, m, n)
            for name, engine in _ENGINES.items():
                try:
                    got = engine(alg, m, n)
                except (NoClosedFormula, NoRecurrence):
                    continue
                result.checked += 1
                if got != oracle:
                    result.mismatches.append((name, m, n))
    log.debug("row %s: %d comparisons, %d mismatches", result.row, result.checked, len(result.mismatches))
    return result


def run_selftest(max_degree: int = 6) -> list[RowResult]:
    return [check_row(alg, max_degree) for alg in table_rows()]
