import pytest

from liewide.logger import setup_logging
from liewide.services.presets import get_preset
from liewide.services.rootsys import build_root_system


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    setup_logging("WARNING")


@pytest.fixture
def a3():
    return build_root_system("A3")


@pytest.fixture
def example1():
    return get_preset("example1")


@pytest.fixture
def example1_variant():
    return get_preset("example1-variant")
