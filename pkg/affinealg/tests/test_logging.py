# affinealg/tests/test_logging.py

"""
Tests for the logging bootstrap in src/utils/logging.py.

Each test evicts the module from ``sys.modules`` and imports it again, the
same as a fresh interpreter would, so the root configuration runs anew.
"""

import importlib
import logging
import sys
import traceback
from logging.handlers import RotatingFileHandler
from types import ModuleType
from typing import Callable

import pytest
from _pytest.logging import LogCaptureFixture
from pytest import MonkeyPatch

MODULE = "src.utils.logging"


@pytest.fixture
def fresh(monkeypatch: MonkeyPatch) -> Callable[[], ModuleType]:
    """
    Loader for a cold import of the bootstrap.  It runs inside the test body
    because pytest attaches its own capture handlers to the root logger
    only after fixtures are set up.
    """
    monkeypatch.setattr(sys, "excepthook", sys.excepthook)

    def load() -> ModuleType:
        sys.modules.pop(MODULE, None)
        logging.getLogger().handlers.clear()
        return importlib.import_module(MODULE)

    return load


def _root_handlers(kind: type) -> list[logging.Handler]:
    return [h for h in logging.getLogger().handlers if type(h) is kind]


def _capture_filtered(caplog: LogCaptureFixture) -> None:
    # caplog sits behind the same filter as the file handler
    (file_handler,) = _root_handlers(RotatingFileHandler)
    for f in file_handler.filters:
        caplog.handler.addFilter(f)
    logging.getLogger().addHandler(caplog.handler)
    caplog.set_level(logging.DEBUG)


# ─────────────────────────────────────────────────────────────────────────────
# Root configuration
# ─────────────────────────────────────────────────────────────────────────────

def test_root_is_configured_once(fresh: Callable[[], ModuleType]) -> None:
    logmod = fresh()
    logmod.get_logger("first")
    importlib.import_module(MODULE)
    logmod.get_logger("second")
    assert len(_root_handlers(RotatingFileHandler)) == 1


def test_console_goes_to_stderr(fresh: Callable[[], ModuleType]) -> None:
    logmod = fresh()
    logmod.get_logger(__name__)
    (console,) = _root_handlers(logging.StreamHandler)
    assert console.stream is sys.stderr
    assert console.level == logging.INFO


# ─────────────────────────────────────────────────────────────────────────────
# Abbreviation of oversized arguments
# ─────────────────────────────────────────────────────────────────────────────

def test_long_positional_argument_is_abbreviated(fresh: Callable[[], ModuleType], caplog: LogCaptureFixture) -> None:
    logmod = fresh()
    log = logmod.get_logger("test.abbrev")
    _capture_filtered(caplog)

    normal_form = "x^2*y + " * 1_000
    log.debug("normal form of %s is %s", "y*x", normal_form)

    (record,) = caplog.records
    assert record.args == ("y*x", f"<abbreviated: {len(normal_form)} chars>")
    assert normal_form not in caplog.text


def test_mapping_arguments_are_abbreviated_per_key(fresh: Callable[[], ModuleType], caplog: LogCaptureFixture) -> None:
    logmod = fresh()
    log = logmod.get_logger("test.abbrev")
    _capture_filtered(caplog)

    log.debug(
        "cache %(strategy)s holds %(entries)d entries: %(table)s",
        {"strategy": "cache-only", "entries": 10, "table": "M" * 5_000},
    )

    (record,) = caplog.records
    assert record.args == {"strategy": "cache-only", "entries": 10, "table": "<abbreviated: 5000 chars>"}


# ─────────────────────────────────────────────────────────────────────────────
# Uncaught exceptions
# ─────────────────────────────────────────────────────────────────────────────

def test_uncaught_exception_is_logged(fresh: Callable[[], ModuleType], caplog: LogCaptureFixture) -> None:
    logmod = fresh()
    logmod.get_logger(__name__)
    logging.getLogger().addHandler(caplog.handler)
    caplog.set_level(logging.CRITICAL)

    try:
        raise ZeroDivisionError("division by zero in normal form")
    except ZeroDivisionError:
        info = sys.exc_info()
    sys.excepthook(*info)

    (record,) = caplog.records
    assert record.levelno == logging.CRITICAL
    assert record.getMessage().startswith("UNCAUGHT EXCEPTION")
    assert record.exc_info is not None
    assert traceback.extract_tb(record.exc_info[2])[-1].name == "test_uncaught_exception_is_logged"
