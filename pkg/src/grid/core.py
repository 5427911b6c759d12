"""Discretization, unit conventions and the wavefunction value type."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.fft import fftfreq

from ..config import MIN_GRID_POINTS, GAUSSIAN_EDGE_DECAY, HBAR
from ..errors import GridError


@dataclass(frozen=True)
class Units:
    """
    Conversion between SI and solver units.

    In solver units hbar = m = 1. Model runs use the identity conversion;
    chip runs set mass to the atomic mass and length_scale to 1 micrometer.

    Attributes:
        hbar: Action unit in SI (J s), or 1 for dimensionless runs.
        mass: Particle mass in SI (kg), or 1 for dimensionless runs.
        length_scale: Meters per solver length unit.
    """

    hbar: float = 1.0
    mass: float = 1.0
    length_scale: float = 1.0

    @classmethod
    def dimensionless(cls):
        return cls()

    @classmethod
    def for_species(cls, mass, length_scale):
        return cls(hbar=HBAR, mass=mass, length_scale=length_scale)

    @property
    def energy_scale(self):
        return self.hbar ** 2 / (self.mass * self.length_scale ** 2)

    @property
    def time_scale(self):
        return self.hbar / self.energy_scale

    def energy_to_solver(self, energy):
        return energy / self.energy_scale

    def time_to_solver(self, time):
        return time / self.time_scale

    def length_to_solver(self, length):
        return length / self.length_scale

    def frequency_to_solver(self, omega):
        return omega * self.time_scale

    def as_dict(self):
        return {
            "hbar": self.hbar,
            "mass": self.mass,
            "length_scale": self.length_scale,
            "energy_scale": self.energy_scale,
            "time_scale": self.time_scale,
        }


def _is_power_of_two(n):
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid2D:
    """
    Uniform periodic Cartesian grid. Arrays are indexed [ix, iy].

    Attributes:
        nx, ny: Point counts (powers of two, at least 16).
        x_min, x_max, y_min, y_max: Domain bounds in solver length units.
    """

    nx: int
    ny: int
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        for name, n in (("nx", self.nx), ("ny", self.ny)):
            if n < MIN_GRID_POINTS or not _is_power_of_two(n):
                raise GridError(f"{name}={n} must be a power of two >= {MIN_GRID_POINTS}")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise GridError("grid bounds must be strictly ordered")

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.nx

    @property
    def dy(self):
        return (self.y_max - self.y_min) / self.ny

    @property
    def cell_area(self):
        return self.dx * self.dy

    @property
    def shape(self):
        return (self.nx, self.ny)

    @cached_property
    def x(self):
        return self.x_min + self.dx * np.arange(self.nx)

    @cached_property
    def y(self):
        return self.y_min + self.dy * np.arange(self.ny)

    @cached_property
    def mesh(self):
        return np.meshgrid(self.x, self.y, indexing='ij')

    @cached_property
    def kx(self):
        return 2.0 * np.pi * fftfreq(self.nx, d=self.dx)

    @cached_property
    def ky(self):
        return 2.0 * np.pi * fftfreq(self.ny, d=self.dy)

    @cached_property
    def k_squared(self):
        KX, KY = np.meshgrid(self.kx, self.ky, indexing='ij')
        return KX ** 2 + KY ** 2

    @property
    def k_max_squared(self):
        return (np.pi / self.dx) ** 2 + (np.pi / self.dy) ** 2

    def as_dict(self):
        return {
            "nx": self.nx, "ny": self.ny,
            "x_min": self.x_min, "x_max": self.x_max,
            "y_min": self.y_min, "y_max": self.y_max,
        }


@dataclass(frozen=True, eq=False)
class Wavefunction:
    """Complex field psi(x, y) on a Grid2D. The amplitude array is read-only."""

    grid: Grid2D
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=np.complex128)
        if amplitudes.shape != self.grid.shape:
            raise GridError(f"amplitudes shape {amplitudes.shape} does not match grid {self.grid.shape}")
        amplitudes.flags.writeable = False
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def density(self):
        return np.abs(self.amplitudes) ** 2

    def norm(self):
        return float(np.sum(self.density) * self.grid.cell_area)

    def normalized(self):
        n = self.norm()
        if n == 0.0:
            raise GridError("cannot normalize a zero wavefunction")
        return Wavefunction(self.grid, self.amplitudes / np.sqrt(n))

    def scaled(self, factor):
        return Wavefunction(self.grid, self.amplitudes * factor)

    def overlap(self, other):
        """Inner product <self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes) * self.grid.cell_area)


def make_gaussian(grid, center, widths, momentum=(0.0, 0.0)):
    """
    Build a normalized Gaussian wavepacket.

    psi ~ exp(-(x-x0)^2/4sx^2 - (y-y0)^2/4sy^2 + i(kx x + ky y)), so sx and sy
    are the rms widths of |psi|^2.

    Args:
        grid: Grid2D to sample on.
        center: (x0, y0).
        widths: (sx, sy), both positive.
        momentum: (kx, ky) wavenumbers.

    Returns:
        Normalized Wavefunction.

    Raises:
        GridError: If a width is not positive or the envelope has not decayed
            below 1e-8 at the domain boundary.
    """
    x0, y0 = center
    sx, sy = widths
    kx, ky = momentum
    if sx <= 0 or sy <= 0:
        raise GridError("Gaussian widths must be positive")

    # Envelope amplitude at the nearest boundary on each axis
    edge_x = min(x0 - grid.x_min, grid.x_max - x0)
    edge_y = min(y0 - grid.y_min, grid.y_max - y0)
    if edge_x <= 0 or edge_y <= 0:
        raise GridError("Gaussian center lies outside the grid")
    if max(np.exp(-edge_x ** 2 / (4 * sx ** 2)), np.exp(-edge_y ** 2 / (4 * sy ** 2))) > GAUSSIAN_EDGE_DECAY:
        raise GridError("Gaussian envelope touches the domain boundary")

    X, Y = grid.mesh
    amplitudes = np.exp(
        -(X - x0) ** 2 / (4 * sx ** 2)
        - (Y - y0) ** 2 / (4 * sy ** 2)
        + 1j * (kx * X + ky * Y)
    )
    return Wavefunction(grid, amplitudes).normalized()
