# affinealg/src/utils/logging.py
"""
Root-logger bootstrap shared by every affinealg module.

The first :func:`get_logger` call attaches

* a rotating file handler (DEBUG, 1 MiB, five backups) at ``log_path()``;
* outside frozen builds, an INFO console handler on *stderr*, since stdout
  carries command output;
* a ``sys.excepthook`` that records uncaught exceptions at CRITICAL.

Normal forms can grow to megabytes, so every handler carries a filter that
abbreviates oversized log arguments.

>>> from src.utils.logging import get_logger
>>> log = get_logger(__name__)
>>> log.info("center window %d solved", 6)
"""

from __future__ import annotations

import logging
import logging.handlers
import sys
from types import TracebackType
from typing import Any, Final

from src.utils.paths import log_path

# --------------------------------------------------------------------------- #
# Constants
# --------------------------------------------------------------------------- #

#: Rotate once the file reaches 1 MiB.
_LOG_MAX_BYTES: Final[int] = 1_048_576
#: Rotated files kept next to the live log.
_LOG_BACKUP_COUNT: Final[int] = 5
#: Longest rendered argument kept verbatim in a record.
_ARG_CHAR_BUDGET: Final[int] = 2_000

# --------------------------------------------------------------------------- #
# Abbreviation filter
# --------------------------------------------------------------------------- #


class _AbbreviateLargeArgsFilter(logging.Filter):
    """
    Replace oversized ``record.args`` values by ``"<abbreviated: N chars>"``.

    Both ``%``-style tuples and dict-style args are handled; the filter
    always returns :pydata:`True` so the record continues down the chain.
    """

    def __init__(self, budget: int = _ARG_CHAR_BUDGET) -> None:
        super().__init__()
        self._budget = budget

    def _shorten(self, value: Any) -> Any:
        if isinstance(value, (int, float)):
            return value
        text = str(value)
        if len(text) > self._budget:
            return f"<abbreviated: {len(text)} chars>"
        return value

    def filter(self, record: logging.LogRecord) -> bool:  # type: ignore[override]
        if isinstance(record.args, dict):
            record.args = {k: self._shorten(v) for k, v in record.args.items()}
        elif isinstance(record.args, tuple):
            record.args = tuple(self._shorten(v) for v in record.args)
        return True


# --------------------------------------------------------------------------- #
# Handlers
# --------------------------------------------------------------------------- #

_FILE_FORMAT: Final[str] = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
_CONSOLE_FORMAT: Final[str] = "%(levelname)-8s | %(name)s | %(message)s"
_DATE_FORMAT: Final[str] = "%Y-%m-%dT%H:%M:%S%z"


def _build_file_handler() -> logging.Handler:
    """DEBUG-level rotating file at ``log_path()``, 1 MiB × 5."""
    handler = logging.handlers.RotatingFileHandler(
        log_path(),
        maxBytes=_LOG_MAX_BYTES,
        backupCount=_LOG_BACKUP_COUNT,
        encoding="utf-8",
    )
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter(fmt=_FILE_FORMAT, datefmt=_DATE_FORMAT))
    handler.addFilter(_AbbreviateLargeArgsFilter())
    return handler


def _build_console_handler() -> logging.Handler:
    # stdout is reserved for command output
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(logging.INFO)
    handler.setFormatter(logging.Formatter(_CONSOLE_FORMAT))
    handler.addFilter(_AbbreviateLargeArgsFilter())
    return handler


def _install_excepthook(root: logging.Logger) -> None:
    """Log uncaught exceptions at CRITICAL, then defer to the default hook."""

    def _excepthook(
        exc_type: type[BaseException],
        exc_value: BaseException,
        exc_traceback: TracebackType | None,
    ) -> None:
        root.critical("UNCAUGHT EXCEPTION", exc_info=(exc_type, exc_value, exc_traceback))
        sys.__excepthook__(exc_type, exc_value, exc_traceback)  # type: ignore[arg-type]

    sys.excepthook = _excepthook


# --------------------------------------------------------------------------- #
# Root logger configuration
# --------------------------------------------------------------------------- #


def _configure_root_logger() -> None:
    """
    One-time initialisation of the *root* logger: the rotating file
    handler, the console handler outside frozen builds, captured
    ``warnings`` and the crash hook.
    """
    root = logging.getLogger()
    if root.handlers:
        return

    root.setLevel(logging.DEBUG)
    root.addHandler(_build_file_handler())
    if not getattr(sys, "frozen", False):
        root.addHandler(_build_console_handler())
    logging.captureWarnings(True)
    _install_excepthook(root)


# --------------------------------------------------------------------------- #
# Public helper
# --------------------------------------------------------------------------- #


def get_logger(name: str | None = None) -> logging.Logger:
    """Logger ``name`` (root when ``None``), configuring the root logger first."""
    _configure_root_logger()
    return logging.getLogger(name)
