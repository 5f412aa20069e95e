import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def torus_cache():
    """Traced zero sets and pillowcase paths, shared across modules."""
    from traceless.torus import TorusKnot, trace_zero_set, variety_paths

    store = {}

    def get(p, q, r=None, s=None, grid=512):
        key = (p, q, r, s, grid)
        if key not in store:
            k = TorusKnot(p, q, r, s)
            zs = trace_zero_set(k, grid)
            store[key] = (k, zs, variety_paths(k, grid, zs))
        return store[key]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
