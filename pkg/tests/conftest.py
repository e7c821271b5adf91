import numpy as np
import pytest

from wavefem.element import ElementGeometry


def cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def random_triangles(n, seed=0):
    """Counterclockwise triangles with a sane aspect ratio."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        v = rng.uniform(-3.0, 3.0, size=(3, 2))
        d = cross2(v[1] - v[0], v[2] - v[0])
        if abs(d) < 0.05 * max(np.sum((v - np.roll(v, 1, 0)) ** 2, axis=1)):
            continue
        if d < 0:
            v = v[[0, 2, 1]]
        out.append(ElementGeometry.from_vertices(v))
    return out


@pytest.fixture
def unit_right():
    return ElementGeometry.from_vertices([(1.0, 1.0), (2.0, 1.0), (1.0, 2.0)])


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
