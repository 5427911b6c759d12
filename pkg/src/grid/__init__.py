"""Grid, units and wavefunction observables."""

from .core import Units, Grid2D, Wavefunction, make_gaussian
from .observables import (
    norm,
    expectation_position,
    widths,
    kinetic_energy,
    potential_energy,
    energy,
    edge_density,
    check_edge_density,
)

__all__ = [
    'Units',
    'Grid2D',
    'Wavefunction',
    'make_gaussian',
    'norm',
    'expectation_position',
    'widths',
    'kinetic_energy',
    'potential_energy',
    'energy',
    'edge_density',
    'check_edge_density',
]
