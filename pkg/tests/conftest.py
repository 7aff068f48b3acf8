import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from polyflake import build_flake, generate, preset  # noqa: E402
from polyflake.geometry import CenterMapSpec  # noqa: E402
from polyflake.ifs import FlakeSpec  # noqa: E402

BIG = 1_000_000

CLOUD_SPECS = {
    "sierpinski-triangle": preset("sierpinski-triangle"),
    "sierpinski-pentagon": preset("sierpinski-pentagon"),
    "pentaflake": preset("pentaflake"),
    "hexaflake": preset("hexaflake"),
    "vicsek": preset("vicsek"),
    "plane-filling-hexagon": FlakeSpec(6, center=CenterMapSpec("L", 2, "half")),
    "{9/3}": FlakeSpec(9, 3),
    "{24/7}": FlakeSpec(24, 7),
}


@pytest.fixture(scope="session")
def big_clouds():
    """Million-point clouds, built lazily and shared across the session."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = generate(build_flake(CLOUD_SPECS[name]), BIG, seed=7)
        return cache[name]

    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
