import pytest

from liekoszul.liealg import from_relations

H3 = "dim 3; [1,2]=3"
G54 = "dim 5; [1,2]=3; [1,3]=4; [2,3]=5"
DIAMOND = "dim 4; [1,2]=3; [1,3]=-2; [2,3]=4"
FILIFORM4 = "dim 4; [1,2]=3; [1,3]=4"
G724 = "dim 7; [1,2]=3; [1,3]=4; [1,4]=5; [1,5]=6; [2,5]=-7; [3,4]=7"


@pytest.fixture
def h3():
    return from_relations(H3)


@pytest.fixture
def g54():
    return from_relations(G54)


@pytest.fixture
def diamond():
    return from_relations(DIAMOND)


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run the E7/E8 Koszul computations")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long exact computations (E7/E8), enabled with --slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
