import importlib.util
import os
import sys
from pathlib import Path

import hypothesis
import pytest

from mangoldt_twists.zeros import ZEROS_ENV, load_fixture, load_zeros

ROOT = Path(__file__).resolve().parents[1]
CACHE_TABLE = ROOT / ".cache" / "zeros_10500.txt"
TABLE_T_MAX = 10500.0

sys.path.insert(0, str(Path(__file__).parent))

hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.register_profile("dev", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def _fetch_module():
    spec = importlib.util.spec_from_file_location("fetch_zeros", ROOT / "scripts" / "fetch_zeros.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


@pytest.fixture(scope="session")
def fixture_zeros():
    return load_fixture()


@pytest.fixture(scope="session")
def zeros_table():
    """Ordinates up to height 10500: from $MANGOLDT_TWISTS_ZEROS, the cache, or computed once."""
    env = os.environ.get(ZEROS_ENV)
    if env:
        return load_zeros(env)
    if not CACHE_TABLE.is_file():
        _fetch_module().main(["--compute", "--t-max", str(TABLE_T_MAX), "--out", str(CACHE_TABLE)])
    return load_zeros(CACHE_TABLE)


@pytest.fixture(scope="session")
def zeros_path(zeros_table):
    return Path(zeros_table.source)


ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Record one verdict line per criterion; printed in the terminal summary."""

    def record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(ACCEPTANCE_LINES[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
