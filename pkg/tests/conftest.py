import numpy as np
import pytest

from curvehull import build_hull, gallery, mesh_volume, sample_uniform

ORACLE_SAMPLES = 200_000

_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_record():
    """Collector for one pass/fail line per acceptance criterion."""

    def record(line):
        _acceptance_lines.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def saddle_curve():
    return gallery.get("saddle").curve


@pytest.fixture(scope="session")
def saddle_2000(saddle_curve):
    return sample_uniform(saddle_curve, 2000)


@pytest.fixture(scope="session")
def saddle_oracle_volume(saddle_curve):
    """Dense quickhull volume of the saddle hull, the formula's ground truth."""
    dense = sample_uniform(saddle_curve, ORACLE_SAMPLES)
    return mesh_volume(build_hull(dense.points))


@pytest.fixture(scope="session")
def wobble3_curve():
    return gallery.get("wobble:k=3").curve


@pytest.fixture()
def rng():
    return np.random.default_rng(42)


def random_rotation(rng) -> np.ndarray:
    """A uniformly random proper rotation matrix."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
