# affinealg/tests/test_migrate.py

"""Tests for the archive migrations in src/infrastructure/database/migrate.py."""

import sqlite3
from pathlib import Path
from typing import Callable

import pytest
from pytest import MonkeyPatch

from src.infrastructure.database import migrate as mig

WriteMigration = Callable[[str, str], Path]


@pytest.fixture
def migrations(monkeypatch: MonkeyPatch, tmp_path: Path) -> WriteMigration:
    """Point the runner at an empty folder; the fixture writes files into it."""
    folder = tmp_path / "migrations"
    folder.mkdir()
    monkeypatch.setattr(mig, "migrations_path", lambda: folder)

    def write(name: str, sql: str) -> Path:
        path = folder / name
        path.write_text(sql, encoding="utf-8")
        return path

    return write


def _user_version(db_file: Path) -> int:
    with sqlite3.connect(db_file) as conn:
        return conn.execute("PRAGMA user_version").fetchone()[0]


# ─────────────────────────────────────────────────────────────────────────────
# File naming
# ─────────────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("name, version", [("001_bench_runs.sql", 1), ("010_add_index.sql", 10)])
def test_version_of(name: str, version: int) -> None:
    assert mig._version_of(Path(name)) == version


@pytest.mark.parametrize("name", ["nounderscore.sql", "abc_def.sql"])
def test_version_of_rejects_bad_names(name: str) -> None:
    with pytest.raises(ValueError):
        mig._version_of(Path(name))


def test_pending_skips_applied_versions(migrations: WriteMigration) -> None:
    # written out of order on purpose
    four = migrations("004_index.sql", "")
    one = migrations("001_init.sql", "")
    two = migrations("002_column.sql", "")

    assert list(mig._pending(0)) == [(1, one), (2, two), (4, four)]
    assert list(mig._pending(3)) == [(4, four)]
    assert list(mig._pending(4)) == []


# ─────────────────────────────────────────────────────────────────────────────
# Running
# ─────────────────────────────────────────────────────────────────────────────

def test_run_applies_in_order_and_is_idempotent(migrations: WriteMigration, tmp_path: Path) -> None:
    migrations("002_seed.sql", "INSERT INTO t(id) VALUES (42);")
    migrations("001_create.sql", "CREATE TABLE t(id INTEGER PRIMARY KEY);")
    db_file = tmp_path / "bench.db"

    assert mig.run(db_file) == 2
    assert mig.run(db_file) == 2
    with sqlite3.connect(db_file) as conn:
        assert conn.execute("SELECT id FROM t").fetchall() == [(42,)]
    assert _user_version(db_file) == 2


def test_failed_migration_keeps_last_good_version(migrations: WriteMigration, tmp_path: Path) -> None:
    migrations("001_create.sql", "CREATE TABLE t(id INTEGER PRIMARY KEY);")
    migrations("002_broken.sql", "CREATE TABLE broken(")
    db_file = tmp_path / "bench.db"

    with pytest.raises(sqlite3.Error):
        mig.run(db_file)
    assert _user_version(db_file) == 1


def test_migrate_on_open_connection(migrations: WriteMigration) -> None:
    migrations("001_create.sql", "CREATE TABLE t(id INTEGER PRIMARY KEY);")
    conn = sqlite3.connect(":memory:")
    try:
        assert mig.migrate(conn) == 1
        assert conn.execute("SELECT name FROM sqlite_master WHERE name = 't'").fetchone() == ("t",)
    finally:
        conn.close()


# ─────────────────────────────────────────────────────────────────────────────
# Shipped schema
# ─────────────────────────────────────────────────────────────────────────────

def test_bench_schema_cascades(tmp_path: Path) -> None:
    db_file = tmp_path / "bench.db"
    assert mig.run(db_file) == 1

    conn = mig.connect(db_file)
    try:
        tables = {r[0] for r in conn.execute("SELECT name FROM sqlite_master WHERE type = 'table'")}
        assert {"bench_runs", "bench_requests"} <= tables
        with conn:
            run_id = conn.execute(
                "INSERT INTO bench_runs (workload, strategy, wall_ms, peak_entries) "
                "VALUES ('powers', 'cache-only', 1.5, 3)"
            ).lastrowid
            conn.execute("INSERT INTO bench_requests VALUES (?, 1, 1, 7)", (run_id,))
        with conn:
            conn.execute("DELETE FROM bench_runs WHERE id = ?", (run_id,))
        assert conn.execute("SELECT COUNT(*) FROM bench_requests").fetchone()[0] == 0
    finally:
        conn.close()
