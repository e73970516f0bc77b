import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conewise.fans import build_cube_fan, build_octahedron_fan, build_payne_fan


@pytest.fixture(scope="session")
def cube_fan():
    return build_cube_fan()


@pytest.fixture(scope="session")
def octahedron_fan():
    return build_octahedron_fan()


@pytest.fixture(scope="session")
def payne_fan():
    return build_payne_fan()
