import os

import pytest


@pytest.fixture(autouse=True, scope="session")
def _isolated_weyl_cache(tmp_path_factory):
    """Keep enumeration caches inside the test run."""
    os.environ["LIECOMM_CACHE_DIR"] = str(tmp_path_factory.mktemp("weylcache"))
    yield
