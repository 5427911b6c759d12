"""Quadrature observables of a Wavefunction."""

import logging

import numpy as np
from scipy.fft import fft2

from ..config import EDGE_DENSITY_LIMIT
from ..errors import EdgeDensityError

logger = logging.getLogger(__name__)

_NORMALIZED_WARN = 1e-6


def norm(psi):
    """Return the integral of |psi|^2 over the grid (Riemann sum)."""
    return psi.norm()


def _warn_if_not_normalized(psi, what):
    n = psi.norm()
    if abs(n - 1.0) > _NORMALIZED_WARN:
        logger.warning("%s of a non-normalized state (norm=%.6g); returning raw integrals", what, n)


def expectation_position(psi):
    """Return (<x>, <y>) as raw integrals."""
    _warn_if_not_normalized(psi, "position")
    X, Y = psi.grid.mesh
    rho = psi.density * psi.grid.cell_area
    return float(np.sum(X * rho)), float(np.sum(Y * rho))


def widths(psi):
    """Return the rms widths (sigma_x, sigma_y)."""
    _warn_if_not_normalized(psi, "widths")
    X, Y = psi.grid.mesh
    rho = psi.density * psi.grid.cell_area
    mx, my = np.sum(X * rho), np.sum(Y * rho)
    var_x = np.sum((X - mx) ** 2 * rho)
    var_y = np.sum((Y - my) ** 2 * rho)
    return float(np.sqrt(var_x)), float(np.sqrt(var_y))


def kinetic_energy(psi, workers=None):
    """Spectral kinetic energy <-1/2 laplacian> (hbar = m = 1)."""
    grid = psi.grid
    psi_k = fft2(psi.amplitudes, workers=workers)
    # Parseval: sum |psi|^2 = sum |psi_k|^2 / N
    weight = grid.cell_area / (grid.nx * grid.ny)
    return float(0.5 * np.sum(grid.k_squared * np.abs(psi_k) ** 2) * weight)


def potential_energy(psi, potential):
    values = getattr(potential, "values", potential)
    return float(np.sum(values * psi.density) * psi.grid.cell_area)


def energy(psi, potential, workers=None):
    """Return kinetic (spectral) plus potential (pointwise) energy."""
    _warn_if_not_normalized(psi, "energy")
    return kinetic_energy(psi, workers=workers) + potential_energy(psi, potential)


def edge_density(psi):
    """Largest |psi|^2 on the outermost rows and columns of the grid."""
    rho = psi.density
    return float(max(rho[0, :].max(), rho[-1, :].max(), rho[:, 0].max(), rho[:, -1].max()))


def check_edge_density(psi, limit=EDGE_DENSITY_LIMIT):
    """
    Raise if density at the periodic boundary exceeds the limit.

    Raises:
        EdgeDensityError: When the wavefunction would wrap around.
    """
    value = edge_density(psi)
    if value > limit:
        raise EdgeDensityError(f"edge density {value:.3e} exceeds {limit:.1e}; enlarge the domain")
    return value
