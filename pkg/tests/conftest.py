# Standard
import os

# Third Party
import pytest

RUN_SLOW_ENV = "DCODE_RUN_SLOW"
FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def pytest_collection_modifyitems(config, items):
    if os.getenv(RUN_SLOW_ENV) == "1":
        return
    skip_slow = pytest.mark.skip(reason=f"slow; set {RUN_SLOW_ENV}=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR
