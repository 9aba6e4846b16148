import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# make tests/oracles importable as a plain package
sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from tknots import algebra, diagrams, tribracket  # noqa: E402
from tknots.verify import load_builtin  # noqa: E402


@pytest.fixture(scope="session")
def d3():
    return algebra.dihedral(3)


@pytest.fixture(scope="session")
def d5():
    return algebra.dihedral(5)


@pytest.fixture(scope="session")
def t3():
    return tribracket.dihedral_tribracket(3)


@pytest.fixture(scope="session")
def trefoil():
    return load_builtin("trefoil")


@pytest.fixture(scope="session")
def figure8():
    return load_builtin("figure8")


@pytest.fixture(scope="session")
def kink():
    return diagrams.build_structure([[1, 1, 2, 2]])
