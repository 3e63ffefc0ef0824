import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sparsedom.graph import Graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def small_graphs(draw, max_n=10, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    ids = draw(st.permutations(range(3 * n)))[:n]
    return Graph((ids[v] for v in range(n)), ((ids[u], ids[v]) for u, v in chosen))


def pytest_configure(config):
    config.stash_lines = []


@pytest.fixture
def acceptance(pytestconfig):
    """Record one pass/fail line per criterion; the lines are repeated in the terminal summary."""

    def record(criterion: int, ok: bool, detail: str) -> None:
        line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        pytestconfig.stash_lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "stash_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
