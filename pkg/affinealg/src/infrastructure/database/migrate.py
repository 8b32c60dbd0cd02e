# affinealg/src/infrastructure/database/migrate.py
"""
Schema migrations for the benchmark archive.

Migration files live in :func:`~src.utils.paths.migrations_path` and are
named ``NNN_description.sql``.  ``NNN`` is the schema version the file
brings the database to, recorded in SQLite's ``PRAGMA user_version``; files
at or below the stored version are skipped, so running twice is harmless.
Each file is applied in its own transaction together with the version bump.
"""

from __future__ import annotations

import sqlite3
from contextlib import closing
from pathlib import Path
from typing import Iterator

from src.utils.logging import get_logger
from src.utils.paths import bench_db_path, migrations_path

log = get_logger(__name__)


def connect(db_file: Path | str | None = None) -> sqlite3.Connection:
    """
    Open the archive (``bench_db_path()`` unless ``db_file`` is given) with
    foreign keys enforced.  Closing it is up to the caller.
    """
    conn = sqlite3.connect(db_file if db_file is not None else bench_db_path())
    conn.execute("PRAGMA foreign_keys = ON")
    return conn


# --------------------------------------------------------------------------- #
# Migration files
# --------------------------------------------------------------------------- #


def _migration_files() -> list[Path]:
    return list(migrations_path().glob("*.sql"))


def _version_of(sql_file: Path) -> int:
    """
    Schema version encoded in ``sql_file``'s name (``007_x.sql`` is 7).

    Raises
    ------
    ValueError
        The name does not start with an integer followed by ``_``.
    """
    head, sep, _ = sql_file.name.partition("_")
    if not sep:
        raise ValueError(f"migration {sql_file.name!r} has no version prefix")
    return int(head)


def _pending(schema_version: int) -> Iterator[tuple[int, Path]]:
    """Files newer than ``schema_version`` in ascending version order."""
    numbered = sorted((_version_of(f), f) for f in _migration_files())
    return ((v, f) for v, f in numbered if v > schema_version)


def _schema_version(conn: sqlite3.Connection) -> int:
    return conn.execute("PRAGMA user_version").fetchone()[0]


def _apply(conn: sqlite3.Connection, version: int, sql_file: Path) -> None:
    script = sql_file.read_text(encoding="utf-8")
    with conn:
        conn.executescript(script)
        conn.execute(f"PRAGMA user_version = {version:d}")
    log.info("schema now at version %d (%s)", version, sql_file.name)


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #


def migrate(conn: sqlite3.Connection) -> int:
    """Bring ``conn`` up to the newest schema; return its version."""
    version = _schema_version(conn)
    for target, sql_file in _pending(version):
        _apply(conn, target, sql_file)
        version = target
    return version


def run(db_file: Path | str | None = None) -> int:
    """
    Migrate the archive at ``db_file`` and close it again.

    Raises
    ------
    sqlite3.Error
        A migration script failed; its transaction is rolled back and the
        schema version stays at the last successful file.
    """
    with closing(connect(db_file)) as conn:
        return migrate(conn)


if __name__ == "__main__":
    run()
