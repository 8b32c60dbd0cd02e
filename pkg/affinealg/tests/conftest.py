# affinealg/tests/conftest.py
import logging
import sys
from pathlib import Path

import pytest
from pytest import MonkeyPatch

# src/ is imported as a top-level package from the project directory
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))


@pytest.fixture(autouse=True)
def _isolate_logging(tmp_path: Path, monkeypatch: MonkeyPatch):  # type:ignore
    """
    Keep the rotating file handler real but aim it at ``tmp_path``, and give
    every test a root logger without handlers or filters.
    """
    log_file = tmp_path / "affinealg_test.log"
    for target in ("src.utils.paths.log_path", "src.utils.logging.log_path"):
        monkeypatch.setattr(target, lambda: log_file, raising=False)

    root = logging.getLogger()
    root.handlers.clear()
    root.filters.clear()
    yield
    root.handlers.clear()
    root.filters.clear()


# --------------------------------------------------------------------------- #
# Shared algebras                                                             #
# --------------------------------------------------------------------------- #
@pytest.fixture
def weyl():
    from src.core.algebra import ModelClass, model_params
    from src.core.coeffs import FieldMode

    return model_params(ModelClass.WEYL, FieldMode.rational())


@pytest.fixture
def generic():
    from src.core.algebra import AlgebraParams

    return AlgebraParams.generic()
