"""Tunneling coupling between two tanh^2 guides from a 1D finite-difference eigensolve."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..errors import WellsMergedError


@dataclass
class DoubleWellStates:
    x: np.ndarray
    potential: np.ndarray
    energies: np.ndarray  # two lowest
    vectors: np.ndarray  # (n, 2), unit-normalized on the grid


def double_well_potential(profile, separation, x):
    """Minimum of two guide profiles centred at -/+ separation/2."""
    half = separation / 2.0
    left = profile.A * np.tanh(profile.B * (x + half)) ** 2
    right = profile.A * np.tanh(profile.B * (x - half)) ** 2
    return np.minimum(left, right)


def finite_difference_levels(x, potential, count=2, mass=1.0):
    """Lowest eigenpairs of -1/2m d^2/dx^2 + V with hard walls (dense tridiagonal)."""
    h = x[1] - x[0]
    diagonal = 1.0 / (mass * h ** 2) + potential
    off_diagonal = np.full(len(x) - 1, -0.5 / (mass * h ** 2))
    energies, vectors = eigh_tridiagonal(diagonal, off_diagonal, select='i', select_range=(0, count - 1))
    return energies, vectors / np.sqrt(h)


def double_well_states(profile, separation, spacing=0.02, padding=None, mass=1.0):
    """
    Two lowest states of the symmetric double well at the given separation.

    Raises:
        WellsMergedError: If the barrier does not rise above the ground energy.
    """
    if separation <= 0:
        raise WellsMergedError("separation must be positive")
    padding = padding if padding is not None else 12.0 / profile.B
    extent = separation / 2.0 + padding
    n = int(np.ceil(2 * extent / spacing)) + 1
    x = np.linspace(-extent, extent, n)
    potential = double_well_potential(profile, separation, x)
    energies, vectors = finite_difference_levels(x, potential, count=2, mass=mass)
    barrier = float(double_well_potential(profile, separation, np.array([0.0]))[0])
    if barrier <= energies[0]:
        raise WellsMergedError(f"barrier {barrier:.4g} below ground energy {energies[0]:.4g}")
    return DoubleWellStates(x, potential, energies, vectors)


def coupling_from_separation(profile, separation, **kwargs):
    """Effective coupling Omega = (E1 - E0) / 2 (hbar = 1)."""
    states = double_well_states(profile, separation, **kwargs)
    return float(states.energies[1] - states.energies[0]) / 2.0
