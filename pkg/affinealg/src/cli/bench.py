# affinealg/src/cli/bench.py
"""
Benchmark harness for the multiplication-cache strategies.

A :class:`Workload` is a seeded, replayable list of polynomial operations.
:func:`run_bench` executes it against a fresh :class:`CommuteCache` and
records the wall time, the peak number of stored matrix entries and how often
every ``y^m · x^n`` was requested.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import dataclass, field
from typing import Any, Final

from src.core.algebra import AlgebraParams, ModelClass, model_params
from src.core.coeffs import FieldMode
from src.core.identities import bracket_pow
from src.core.ncpoly import CacheStrategy, CommuteCache, NcPoly, mul, pow
from src.utils.logging import get_logger

log = get_logger(__name__)

DEFAULT_SEED: Final[int] = 20_240_101


@dataclass(frozen=True)
class Operation:
    """``mul`` of two operands, ``pow`` of one, or the binomial ``defect`` of two."""

    kind: str
    operands: tuple[NcPoly, ...]
    exponent: int = 0

    def run(self, cache: CommuteCache) -> NcPoly:
        if self.kind == "mul":
            return mul(self.operands[0], self.operands[1], cache=cache)
        if self.kind == "pow":
            return pow(self.operands[0], self.exponent, cache=cache)
        if self.kind == "defect":
            u, v = self.operands
            return pow(u + v, self.exponent, cache=cache) - bracket_pow(u, v, self.exponent)
        raise ValueError(f"unknown operation kind {self.kind!r}")


@dataclass(frozen=True)
class Workload:
    name: str
    algebra: AlgebraParams
    operations: tuple[Operation, ...]


@dataclass
class BenchReport:
    workload: str
    strategy: CacheStrategy
    wall_ms: float
    peak_entries: int
    requests: dict[tuple[int, int], int]
    outputs: list[NcPoly] = field(default_factory=list, repr=False)


# --------------------------------------------------------------------------- #
# Workloads
# --------------------------------------------------------------------------- #


def random_poly(rng: random.Random, alg: AlgebraParams, max_degree: int, max_terms: int = 4) -> NcPoly:
    """Random normal form with small integer coefficients."""
    terms: dict[tuple[int, int], int] = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        a = rng.randint(0, d)
        terms[(a, d - a)] = rng.choice([-3, -2, -1, 1, 2, 3])
    return NcPoly(alg, terms)


def powers_workload(alg: AlgebraParams, max_n: int = 12) -> Workload:
    s = NcPoly.x(alg) + NcPoly.y(alg)
    ops = tuple(Operation("pow", (s,), n) for n in range(1, max_n + 1))
    return Workload("powers", alg, ops)


def random_products_workload(alg: AlgebraParams, count: int = 100, max_degree: int = 5, seed: int = DEFAULT_SEED) -> Workload:
    rng = random.Random(seed)
    ops = tuple(
        Operation("mul", (random_poly(rng, alg, max_degree), random_poly(rng, alg, max_degree)))
        for _ in range(count)
    )
    return Workload("random-products", alg, ops)


def binomial_workload(alg: AlgebraParams, max_n: int = 10) -> Workload:
    x, y = NcPoly.x(alg), NcPoly.y(alg)
    ops = tuple(Operation("defect", (x, y), n) for n in range(max_n + 1))
    return Workload("binomial", alg, ops)


def default_workloads(alg: AlgebraParams | None = None, seed: int = DEFAULT_SEED) -> list[Workload]:
    """Powers of x + y, seeded random products and the binomial defects (Weyl over QQ by default)."""
    alg = alg or model_params(ModelClass.WEYL, FieldMode.rational())
    return [
        powers_workload(alg),
        random_products_workload(alg, seed=seed),
        binomial_workload(alg),
    ]


# --------------------------------------------------------------------------- #
# Running
# --------------------------------------------------------------------------- #


def run_bench(workload: Workload, strategy: CacheStrategy, clear_above: int | None = None) -> BenchReport:
    cache = CommuteCache(workload.algebra, strategy)
    outputs = []
    start = time.perf_counter()
    for op in workload.operations:
        outputs.append(op.run(cache))
        if clear_above is not None:
            cache.clear_above(clear_above)
    wall_ms = (time.perf_counter() - start) * 1000.0
    log.info(
        "bench %s/%s: %.1f ms, peak %d entries, %d distinct requests",
        workload.name,
        strategy.value,
        wall_ms,
        cache.peak_entries,
        len(cache.request_counters),
    )
    return BenchReport(
        workload=workload.name,
        strategy=strategy,
        wall_ms=wall_ms,
        peak_entries=cache.peak_entries,
        requests=dict(cache.request_counters),
        outputs=outputs,
    )


# --------------------------------------------------------------------------- #
# Emitters
# --------------------------------------------------------------------------- #


def report_dict(report: BenchReport) -> dict[str, Any]:
    return {
        "workload": report.workload,
        "strategy": report.strategy.value,
        "wall_ms": round(report.wall_ms, 3),
        "peak_entries": report.peak_entries,
        "requests": [
            {"m": m, "n": n, "count": c} for (m, n), c in sorted(report.requests.items())
        ],
    }


def to_json(report: BenchReport) -> str:
    return json.dumps(report_dict(report), indent=2)


def to_csv(report: BenchReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["m", "n", "count"])
    for (m, n), c in sorted(report.requests.items()):
        writer.writerow([m, n, c])
    return buf.getvalue()


def request_table(requests: dict[tuple[int, int], int]) -> str:
    """Request counts as a grid, ``m`` down and ``n`` across."""
    if not requests:
        return "(no requests)"
    max_m = max(m for m, _ in requests)
    max_n = max(n for _, n in requests)
    width = max(len(str(c)) for c in requests.values())
    width = max(width, len(str(max_n)), 2)
    header = "m\\n".rjust(width + 1) + " " + " ".join(str(n).rjust(width) for n in range(max_n + 1))
    lines = [header]
    for m in range(max_m + 1):
        cells = " ".join(str(requests.get((m, n), "")).rjust(width) for n in range(max_n + 1))
        lines.append(str(m).rjust(width + 1) + " " + cells)
    return "\n".join(lines)
