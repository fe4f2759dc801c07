import numpy as np
import pytest

from wlift import PiecewiseGeodesicPath, circle, cylinder, euclidean, make_measure

ALL_SPACES = [euclidean(1), euclidean(2), euclidean(3), circle(2.0), cylinder(2.0)]


def random_point(rng, space):
    x = rng.normal(scale=2.0, size=space.dim)
    if space.kind in ("circle", "cylinder"):
        x[0] = rng.uniform(0, space.perimeter)
    return x


def random_points(rng, space, n):
    return np.stack([random_point(rng, space) for _ in range(n)])


def random_measure(rng, space, n_atoms):
    w = rng.uniform(0.2, 1.0, size=n_atoms)
    return make_measure(space, random_points(rng, space, n_atoms), w / w.sum())


def random_path(rng, space, level):
    return PiecewiseGeodesicPath(space, random_points(rng, space, 2**level + 1), level)


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)


# one "[criterion N] PASS/FAIL" line per acceptance criterion, echoed after
# the test run so output capture cannot swallow them
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
