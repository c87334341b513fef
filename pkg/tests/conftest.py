"""
Shared fixtures: corpus access, a small signature, a fake prover and golden files.
"""

import os
import shutil
import stat
import sys
from pathlib import Path

import pytest

from src.config import settings
from src.modules.runner.schemas import ProverConfig
from src.modules.signature.models import function, predicate
from src.modules.signature.services import build_signature

TESTS_DIR = Path(__file__).resolve().parent
GOLDEN_DIR = TESTS_DIR / "golden"

FAKE_PROVER = """#!{python}
import os
import sys

problem = open(sys.argv[-1], encoding="utf-8").read()
status = os.environ.get("FAKE_SZS_STATUS", "Theorem")
if "conjecture" not in problem:
    status = "Satisfiable"
print("% fake prover")
print(f"% SZS status {{status}} for problem")
"""

SLOW_PROVER = """#!{python}
import time

time.sleep(30)
"""


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return settings.CORPUS_PATH


@pytest.fixture(scope="session")
def read_corpus(corpus_dir):
    def read(name: str) -> str:
        return (corpus_dir / name).read_text(encoding="utf-8")
    return read


@pytest.fixture
def small_asig():
    """F = {f/1, c/0}, P = {p/1} (plus the injected ist/2), V = x, y, z."""
    return build_signature(
        [function("f", 1), function("c", 0)],
        [predicate("p", 1)],
        ("x", "y", "z"),
    )


def _script(path: Path, body: str) -> Path:
    path.write_text(body.format(python=sys.executable), encoding="utf-8")
    path.chmod(path.stat().st_mode | stat.S_IXUSR | stat.S_IXGRP | stat.S_IXOTH)
    return path


@pytest.fixture
def fake_prover_path(tmp_path) -> Path:
    """Executable that answers with $FAKE_SZS_STATUS (Theorem by default)."""
    if sys.platform == "win32":
        pytest.skip("fake prover script needs a POSIX shebang")
    return _script(tmp_path / "fake_prover", FAKE_PROVER)


@pytest.fixture
def fake_prover(fake_prover_path) -> ProverConfig:
    return ProverConfig(executable=str(fake_prover_path), timeout=10.0, parallel_goals=2)


@pytest.fixture
def slow_prover(tmp_path) -> ProverConfig:
    if sys.platform == "win32":
        pytest.skip("slow prover script needs a POSIX shebang")
    return ProverConfig(executable=str(_script(tmp_path / "slow_prover", SLOW_PROVER)), timeout=0.5)


@pytest.fixture(scope="session")
def prover_config() -> ProverConfig:
    """The real prover from settings; skips when it is not installed."""
    if shutil.which(settings.QIANA_PROVER) is None:
        pytest.skip(f"prover {settings.QIANA_PROVER} is not on PATH")
    return ProverConfig.from_settings(settings)


@pytest.fixture
def golden():
    """Compare text with tests/golden/<name>; QIANA_UPDATE_GOLDEN=1 rewrites it."""
    def check(name: str, text: str) -> None:
        path = GOLDEN_DIR / name
        if os.environ.get("QIANA_UPDATE_GOLDEN"):
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        elif not path.exists():
            pytest.fail(f"golden file {name} is missing; run with QIANA_UPDATE_GOLDEN=1 to create it")
        assert text == path.read_text(encoding="utf-8")
    return check
