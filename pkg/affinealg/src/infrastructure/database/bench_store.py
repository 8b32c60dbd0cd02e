# affinealg/src/infrastructure/database/bench_store.py
"""
bench_store.py – archive of benchmark runs.

Runs are stored in ``bench_runs`` with their request matrix in
``bench_requests`` so request counts of different strategies can be
compared after the fact.  Every public function migrates the database
before touching it.
"""

from __future__ import annotations

import sqlite3
from contextlib import closing
from pathlib import Path
from typing import NamedTuple

from src.cli.bench import BenchReport
from src.infrastructure.database.migrate import connect, migrate
from src.utils.logging import get_logger

log = get_logger(__name__)


class RunRow(NamedTuple):
    id: int
    workload: str
    strategy: str
    wall_ms: float
    peak_entries: int
    created_at: str


def _open(db_file: Path | str | None) -> sqlite3.Connection:
    conn = connect(db_file)
    migrate(conn)
    return conn


def save_report(report: BenchReport, db_file: Path | str | None = None) -> int:
    """Store ``report`` and its request counts; return the new run id."""
    with closing(_open(db_file)) as conn:
        with conn:
            cur = conn.execute(
                "INSERT INTO bench_runs (workload, strategy, wall_ms, peak_entries) "
                "VALUES (?, ?, ?, ?)",
                (report.workload, report.strategy.value, report.wall_ms, report.peak_entries),
            )
            run_id = int(cur.lastrowid)
            conn.executemany(
                "INSERT INTO bench_requests (run_id, m, n, count) VALUES (?, ?, ?, ?)",
                [(run_id, m, n, c) for (m, n), c in sorted(report.requests.items())],
            )
    log.info("archived bench run %d (%s/%s)", run_id, report.workload, report.strategy.value)
    return run_id


def load_requests(run_id: int, db_file: Path | str | None = None) -> dict[tuple[int, int], int]:
    """The request matrix of run ``run_id``; empty when the run does not exist."""
    with closing(_open(db_file)) as conn:
        rows = conn.execute(
            "SELECT m, n, count FROM bench_requests WHERE run_id = ? ORDER BY m, n",
            (run_id,),
        ).fetchall()
    return {(m, n): c for m, n, c in rows}


def list_runs(db_file: Path | str | None = None) -> list[RunRow]:
    with closing(_open(db_file)) as conn:
        rows = conn.execute(
            "SELECT id, workload, strategy, wall_ms, peak_entries, created_at "
            "FROM bench_runs ORDER BY id"
        ).fetchall()
    return [RunRow(*row) for row in rows]
