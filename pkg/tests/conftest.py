import numpy as np
import pytest

from dynroute import table4_graph, table4_timeline


@pytest.fixture
def t4_graph():
    return table4_graph()


@pytest.fixture
def t4_timeline():
    return table4_timeline()


@pytest.fixture
def rng():
    return np.random.default_rng(0)
