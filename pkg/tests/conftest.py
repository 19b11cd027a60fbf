"""Общие фикстуры и опция --runslow."""

import pytest

from yangbaxter_hub.core.brace import parse_brace_spec
from yangbaxter_hub.core.fixtures import get_fixture
from yangbaxter_hub.infra.store import StoreManager


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="Запускать долгие переборы"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="нужен --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def size4_d8():
    s, _ = get_fixture("size4-d8")
    return s


@pytest.fixture
def size8_uniconnected():
    s, _ = get_fixture("size8-uniconnected")
    return s


@pytest.fixture
def dihedral_brace():
    return parse_brace_spec("sd:triv3,triv2,inv")


@pytest.fixture
def store(tmp_path):
    return StoreManager(str(tmp_path / "catalog"))
