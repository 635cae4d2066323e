from pathlib import Path

import pytest

from magnetick.catalog import cyclic_magnetic
from magnetick.coefficients import Twist
from magnetick.groups import CentralExtension
from magnetick.inputs import load_assertions, load_complex, load_group, load_overrides

DATA = Path(__file__).resolve().parents[1] / "src" / "magnetick" / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def z4():
    return load_group(DATA / "z4.json")


@pytest.fixture(scope="session")
def soc_twist(z4):
    z8 = cyclic_magnetic(8)
    return Twist(CentralExtension(z8, z4, [x % 4 for x in range(8)]), "sign")


@pytest.fixture(scope="session")
def torus(z4):
    return load_complex(DATA / "torus.json", z4)


@pytest.fixture(scope="session")
def nosoc_inputs():
    overrides, assume = load_overrides(DATA / "torus_nosoc_overrides.json")
    return overrides, load_assertions(DATA / "torus_nosoc_assertions.json")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number][1])
