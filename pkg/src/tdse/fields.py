"""Potential fields sampled on a grid."""

from dataclasses import dataclass

import numpy as np

from ..errors import GridError

PROVENANCES = ("model", "chip", "custom")


@dataclass(frozen=True, eq=False)
class PotentialField:
    """
    Real potential V(x, y) in solver energy units.

    Attributes:
        grid: Grid2D the values are sampled on.
        values: Real array of shape (nx, ny).
        provenance: 'model', 'chip' or 'custom'.
        offset: Constant subtracted from the physical potential (chip fields
            are referenced to the trap bottom U_z).
    """

    grid: object
    values: np.ndarray
    provenance: str = "custom"
    offset: float = 0.0

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.shape != self.grid.shape:
            raise GridError(f"potential shape {values.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise GridError("potential contains non-finite values")
        if self.provenance not in PROVENANCES:
            raise GridError(f"unknown provenance '{self.provenance}'")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid, func, provenance="custom"):
        """Sample func(X, Y) on the grid mesh."""
        X, Y = grid.mesh
        return cls(grid, func(X, Y), provenance)

    @property
    def max_abs(self):
        return float(np.max(np.abs(self.values)))

    def with_penalty(self, mask, height):
        """Return a copy with `height` added where mask is True."""
        return PotentialField(self.grid, self.values + height * mask, self.provenance, self.offset)
