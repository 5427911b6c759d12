"""Shared fixtures: small grids and analytic potentials."""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.grid.core import Grid2D
from src.potentials.model import build_model_system
from src.tdse.fields import PotentialField

CONFIGS = Path(__file__).parent.parent / "configs"


@pytest.fixture
def configs_dir():
    return CONFIGS


@pytest.fixture
def square_grid():
    """64 x 64 points on [-10, 10)^2."""
    return Grid2D(64, 64, -10.0, 10.0, -10.0, 10.0)


@pytest.fixture
def harmonic(square_grid):
    """Isotropic harmonic potential with omega = 1."""
    return PotentialField.from_function(square_grid, lambda X, Y: 0.5 * (X ** 2 + Y ** 2))


@pytest.fixture
def guide_grid():
    """Transverse [-12, 12) with 64 points, longitudinal [-64, 64) with 256 points."""
    return Grid2D(64, 256, -12.0, 12.0, -64.0, 64.0)


@pytest.fixture
def small_system():
    return build_model_system(x_far=6.0, x_near=2.0, coupling_length=40.0, offset=8.0, omega_l=0.01)


@pytest.fixture
def three_straight_guides():
    """Three parallel tanh^2 guides at x = -6, 0, 6 with a harmonic y trap (omega = 1)."""
    grid = Grid2D(64, 64, -12.0, 12.0, -8.0, 8.0)

    def values(X, Y):
        guides = [20.0 * np.tanh(0.5 * (X - c)) ** 2 for c in (-6.0, 0.0, 6.0)]
        return np.minimum(np.minimum(guides[0], guides[1]), guides[2]) + 0.5 * Y ** 2

    return PotentialField.from_function(grid, values)
