import sys
import warnings

import pytest

warnings.filterwarnings("ignore", message="The TBB threading layer")


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("WEBLAB_CACHE", str(tmp_path / "cache"))
    yield tmp_path / "cache"


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        name, ok = results[number]
        terminalreporter.write_line(f"criterion {number} {name} ... {'PASS' if ok else 'FAIL'}")
