import os

import pytest
from hypothesis import HealthCheck, settings

from fkalg.pipeline import Cache
from fkalg.suite import Workspace

settings.register_profile("fk", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("fk")

# criterion number -> (title, passed), filled by test_acceptance
ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return os.environ.get("FK_CACHE_DIR") or str(tmp_path_factory.mktemp("fkcache"))


@pytest.fixture(scope="session")
def ws(cache_dir):
    """One workspace for the whole session, so each algebra is built once."""
    return Workspace(Cache(cache_dir))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}")
