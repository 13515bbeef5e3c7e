import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qgraph import instances  # noqa: E402


@pytest.fixture
def c4_reflection():
    return instances.c4_reflection()


@pytest.fixture
def inverted_edge():
    return instances.inverted_edge()


@pytest.fixture
def star_swap():
    return instances.star_swap()


@pytest.fixture
def parallel_swap():
    return instances.parallel_swap()
