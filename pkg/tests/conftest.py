from __future__ import annotations

from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    outcome = "PASS" if report.passed else "FAIL"
    print(f"\n[acceptance] {outcome} {name} ({report.duration:.2f}s)", flush=True)


@pytest.fixture(scope="session")
def las_dir() -> Path:
    return FIXTURES / "las"


@pytest.fixture(scope="session")
def corpus_paths(las_dir) -> list[Path]:
    """The hand-written LAS corpus (excludes the big synthetic wells)."""
    names = [
        "basic_v20.las",
        "sentinel_v20.las",
        "wrapped_v20.las",
        "unwrapped_v20.las",
        "basic_v12.las",
        "wrapped_v12.las",
    ]
    return [las_dir / n for n in names]
