"""
Shared pytest setup: slow suites run only when ENVELOPES_RUN_SLOW=1.
"""

import pytest

from config import env_flag
from error_logger import reset_error_logger


def pytest_collection_modifyitems(config, items):
    if env_flag("ENVELOPES_RUN_SLOW"):
        return
    skip_slow = pytest.mark.skip(reason="set ENVELOPES_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def fresh_error_logger():
    reset_error_logger()
    yield
    reset_error_logger()
