import math

import pytest

from ejm.bases import EjmParams

GRID_Z = (1.0 / math.sqrt(3.0), 0.85, 1.0)
GRID_PHI = (-2.0, 0.3, 2.5)
GRID_THETA = (0.0, 0.8, math.pi / 2)
GRID_GAMMA = (0.0, 0.5, math.pi / 2)


def make_grid():
    return [
        EjmParams(z=z, phi=phi, theta=theta, gamma=gamma)
        for z in GRID_Z
        for phi in GRID_PHI
        for theta in GRID_THETA
        for gamma in GRID_GAMMA
    ]


@pytest.fixture(scope="session")
def grid_params():
    """The 3^4 parameter grid used across the verification suites."""
    return make_grid()


@pytest.fixture(scope="session")
def small_grid():
    """A 2^4 corner subgrid for the cheaper module-level checks."""
    return [
        EjmParams(z=z, phi=phi, theta=theta, gamma=gamma)
        for z in (GRID_Z[0], GRID_Z[2])
        for phi in (GRID_PHI[0], GRID_PHI[2])
        for theta in (GRID_THETA[1], GRID_THETA[2])
        for gamma in (GRID_GAMMA[1], GRID_GAMMA[2])
    ]
