# affinealg/src/utils/paths.py

"""
paths.py – centralised helpers for locating affinealg's on-disk resources.

This module hides the differences between a *frozen* binary (PyInstaller,
cx_Freeze, etc.) and an editable source checkout.  Every file the package
writes (the rotating log and the benchmark archive) is resolved here.

Functions
---------
bench_db_path() -> Path
    Location of the SQLite archive that ``bench --store`` writes to.
migrations_path() -> Path
    Directory holding the numbered ``.sql`` migrations of that archive.
log_path() -> Path
    Location of the rotating log file.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Final

from platformdirs import user_data_dir

#: Identifiers ``platformdirs`` uses for the per-user data directory.
_APP_NAME: Final[str] = "affinealg"
_APP_AUTHOR: Final[str] = "affinealg"

_DB_FILE_NAME: Final[str] = "bench.db"
_LOG_FILE_NAME: Final[str] = "affinealg.log"
#: Archive and migrations, relative to the project root (or the executable).
_REL_DATA: Final[str] = "src/infrastructure/database/data"
_REL_MIGRATIONS: Final[str] = "src/infrastructure/database/migrations"
_REL_LOGS: Final[str] = "logs"


def _is_frozen() -> bool:
    return bool(getattr(sys, "frozen", False))


def _project_root() -> Path:
    # utils/paths.py -> utils -> src -> project root
    return Path(__file__).resolve().parents[2]


def _user_dir() -> Path:
    """Per-user data directory, created ``0o700`` on first use."""
    path = Path(user_data_dir(_APP_NAME, _APP_AUTHOR))
    path.mkdir(parents=True, exist_ok=True, mode=0o700)
    return path


# --------------------------------------------------------------------------- #
# Public helpers
# --------------------------------------------------------------------------- #


def bench_db_path() -> Path:
    """
    Absolute path of *bench.db*.

    Frozen builds keep it in the per-user data directory; a source checkout
    keeps it under ``src/infrastructure/database/data/`` so archived runs
    stay next to the code that produced them.
    """
    if _is_frozen():
        return _user_dir() / _DB_FILE_NAME
    data_dir = _project_root() / _REL_DATA
    data_dir.mkdir(parents=True, exist_ok=True)
    return data_dir / _DB_FILE_NAME


def migrations_path() -> Path:
    """
    Directory of the numbered ``.sql`` migrations.

    A frozen build ships the folder next to the executable.  Never created
    here: migrations are read-only assets.
    """
    base = Path(sys.executable).parent if _is_frozen() else _project_root()
    return base / _REL_MIGRATIONS


def log_path() -> Path:  # noqa: D401
    """
    Absolute path of the rotating log file: the per-user data directory
    when frozen, ``<project_root>/logs/affinealg.log`` from source.
    """
    if _is_frozen():
        return _user_dir() / _LOG_FILE_NAME
    log_dir = _project_root() / _REL_LOGS
    log_dir.mkdir(parents=True, exist_ok=True, mode=0o700)
    return log_dir / _LOG_FILE_NAME
