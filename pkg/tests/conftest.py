import sys
from pathlib import Path

import pytest

from netid.model import NetworkModel, parse_network

sys.path.insert(0, str(Path(__file__).resolve().parent))

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str) -> NetworkModel:
    return parse_network((FIXTURE_DIR / f"{name}.json").read_text())


@pytest.fixture
def fig1() -> NetworkModel:
    return load_fixture("fig1")


@pytest.fixture
def fig2() -> NetworkModel:
    return load_fixture("fig2")


@pytest.fixture
def fig3() -> NetworkModel:
    return load_fixture("fig3")


@pytest.fixture
def fig4() -> NetworkModel:
    return load_fixture("fig4")


@pytest.fixture
def fig6() -> NetworkModel:
    return load_fixture("fig6")
