import logging

import numpy as np
import pytest

from src.config import SPECIES, HBAR, CHIP_LENGTH_SCALE
from src.errors import EdgeDensityError, GridError
from src.grid import (
    Grid2D, Units, Wavefunction, check_edge_density, edge_density, expectation_position,
    kinetic_energy, make_gaussian, widths,
)


@pytest.mark.parametrize("nx, ny", [(100, 64), (8, 64), (64, 0)])
def test_grid_rejects_bad_sizes(nx, ny):
    with pytest.raises(GridError):
        Grid2D(nx, ny, -1.0, 1.0, -1.0, 1.0)


def test_grid_rejects_unordered_bounds():
    with pytest.raises(GridError):
        Grid2D(16, 16, 1.0, -1.0, -1.0, 1.0)


def test_grid_axes(square_grid):
    assert square_grid.dx == pytest.approx(20.0 / 64)
    assert len(square_grid.x) == 64
    assert square_grid.x[0] == -10.0
    assert square_grid.k_squared.shape == square_grid.shape
    assert np.abs(square_grid.kx).max() == pytest.approx(np.pi / square_grid.dx)


def test_units_dimensionless():
    units = Units.dimensionless()
    assert units.energy_scale == 1.0
    assert units.time_scale == 1.0


def test_units_for_lithium():
    mass = SPECIES["li6"]["mass"]
    units = Units.for_species(mass, CHIP_LENGTH_SCALE)
    assert units.energy_scale == pytest.approx(HBAR ** 2 / (mass * 1e-12))
    assert units.energy_to_solver(units.energy_scale) == pytest.approx(1.0)
    assert units.time_to_solver(units.time_scale) == pytest.approx(1.0)
    assert units.frequency_to_solver(1.0 / units.time_scale) == pytest.approx(1.0)


def test_wavefunction_is_read_only(square_grid):
    psi = make_gaussian(square_grid, (0.0, 0.0), (1.0, 1.0))
    with pytest.raises(ValueError):
        psi.amplitudes[0, 0] = 1.0


def test_gaussian_is_normalized_with_requested_widths(square_grid):
    psi = make_gaussian(square_grid, (1.0, -2.0), (1.0, 0.8))
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)
    sx, sy = widths(psi)
    assert sx == pytest.approx(1.0, rel=1e-6)
    assert sy == pytest.approx(0.8, rel=1e-6)
    x, y = expectation_position(psi)
    assert x == pytest.approx(1.0, abs=1e-10)
    assert y == pytest.approx(-2.0, abs=1e-10)


def test_gaussian_validation(square_grid):
    with pytest.raises(GridError):
        make_gaussian(square_grid, (0.0, 0.0), (0.0, 1.0))
    with pytest.raises(GridError):
        make_gaussian(square_grid, (20.0, 0.0), (1.0, 1.0))
    with pytest.raises(GridError):
        make_gaussian(square_grid, (0.0, 0.0), (4.0, 1.0))


def test_kinetic_energy_of_moving_gaussian(square_grid):
    sigma, k = 1.0, 1.5
    psi = make_gaussian(square_grid, (0.0, 0.0), (sigma, sigma), momentum=(k, 0.0))
    expected = 2 * 1.0 / (8 * sigma ** 2) + 0.5 * k ** 2
    assert kinetic_energy(psi) == pytest.approx(expected, rel=1e-8)


def test_edge_density_monitor(square_grid):
    centered = make_gaussian(square_grid, (0.0, 0.0), (1.0, 1.0))
    assert edge_density(centered) < 1e-12
    check_edge_density(centered)

    flat = Wavefunction(square_grid, np.ones(square_grid.shape)).normalized()
    with pytest.raises(EdgeDensityError):
        check_edge_density(flat)


def test_observables_warn_for_unnormalized_state(square_grid, caplog):
    psi = make_gaussian(square_grid, (0.0, 0.0), (1.0, 1.0)).scaled(2.0)
    with caplog.at_level(logging.WARNING):
        widths(psi)
    assert "non-normalized" in caplog.text
