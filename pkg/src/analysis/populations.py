"""Per-guide population bookkeeping and refocusing diagnostics."""

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy.signal import argrelextrema

from ..errors import PartitionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartitionEntry:
    """Basin boundaries of one transverse cut."""

    boundaries: tuple
    degraded: bool
    minima: tuple


def partition(profile, coords=None):
    """
    Split a 1D potential cut into left/middle/right basins.

    Boundaries sit at the highest point between adjacent local minima. With
    more than three minima the three deepest are kept. Two minima give a
    single boundary and a degraded entry.

    Args:
        profile: 1D array of potential values.
        coords: Coordinates of the samples (defaults to indices).

    Returns:
        PartitionEntry.

    Raises:
        PartitionError: If the cut has fewer than two minima.
    """
    profile = np.asarray(profile, dtype=float)
    coords = np.arange(len(profile), dtype=float) if coords is None else np.asarray(coords, dtype=float)
    minima = argrelextrema(profile, np.less)[0]
    if len(minima) > 3:
        minima = np.sort(minima[np.argsort(profile[minima])[:3]])
    if len(minima) < 2:
        raise PartitionError(f"profile has {len(minima)} local minimum; need 2 or 3 wells")

    boundaries = []
    for i, j in zip(minima[:-1], minima[1:]):
        top = i + int(np.argmax(profile[i:j + 1]))
        boundaries.append(float(coords[top]))
    degraded = len(minima) == 2
    if degraded:
        boundaries = [boundaries[0], boundaries[0]]
    return PartitionEntry(tuple(boundaries), degraded, tuple(float(coords[m]) for m in minima))


@dataclass
class RegionPartition:
    """
    Basin boundaries along x for every longitudinal column of a grid.

    Attributes:
        boundaries: Array (ny, 2) of x positions separating the basins.
        degraded: Array (ny,) flagging cuts with only two wells.
    """

    boundaries: np.ndarray
    degraded: np.ndarray

    @property
    def any_degraded(self):
        return bool(np.any(self.degraded))


def partition_field(potential, per_column=True):
    """
    Build a RegionPartition from a potential field.

    Args:
        potential: PotentialField (x transverse on axis 0).
        per_column: Partition each column V[:, j] separately (guides moving
            with y); otherwise partition the valley floor min_y V(x, y)
            and use it for every column (chip cross-sections).
    """
    grid = potential.grid
    values = potential.values
    if per_column:
        entries = [partition(values[:, j], grid.x) for j in range(grid.ny)]
    else:
        entries = [partition(values.min(axis=1), grid.x)] * grid.ny
    boundaries = np.array([e.boundaries for e in entries])
    degraded = np.array([e.degraded for e in entries])
    if degraded.any():
        logger.debug("%d of %d cuts have merged wells", int(degraded.sum()), grid.ny)
    return RegionPartition(boundaries, degraded)


class Populations(NamedTuple):
    left: float
    middle: float
    right: float
    remainder: float


def populations(psi, region):
    """Integrate |psi|^2 over the left, middle and right basins."""
    X, _ = psi.grid.mesh
    rho = psi.density * psi.grid.cell_area
    lower = region.boundaries[:, 0][None, :]
    upper = region.boundaries[:, 1][None, :]
    left = float(np.sum(rho[X < lower]))
    right = float(np.sum(rho[X >= upper]))
    middle = float(np.sum(rho[(X >= lower) & (X < upper)]))
    remainder = float(np.sum(rho)) - left - middle - right
    return Populations(left, middle, right, remainder)


@dataclass
class RefocusReport:
    times: np.ndarray
    widths: np.ndarray
    refocus_time: float
    ratio: float
    max_width: float
    time_of_max_width: float


def refocus_check(trajectory, omega_l, axis=1):
    """
    Compare the longitudinal rms width at t = pi/omega_l with the initial width.

    Args:
        trajectory: RunTrajectory with recorded widths.
        omega_l: Longitudinal trap frequency.
        axis: Width component (1 = longitudinal y).
    """
    arrays = trajectory.as_arrays()
    times = arrays["t"]
    series = arrays["width"][:, axis]
    t_ref = np.pi / omega_l
    idx = int(np.argmin(np.abs(times - t_ref)))
    peak = int(np.argmax(series))
    return RefocusReport(
        times=times,
        widths=series,
        refocus_time=float(times[idx]),
        ratio=float(series[idx] / series[0]),
        max_width=float(series[peak]),
        time_of_max_width=float(times[peak]),
    )


@dataclass
class RunResult:
    """
    Outcome of one transfer run.

    Attributes:
        times: Recorded times (solver units).
        populations: Array (n, 3) of left/middle/right populations.
        remainders: Density outside the three basins.
        fidelity: Population in the target (right) guide at measurement time.
        max_middle: Largest middle-guide population during the run.
        refocus_ratio: Longitudinal width at measurement over initial (model runs).
        config: Echo of the scenario settings.
    """

    times: np.ndarray
    populations: np.ndarray
    remainders: np.ndarray
    fidelity: float
    max_middle: float
    refocus_ratio: Optional[float] = None
    config: dict = field(default_factory=dict)

    @classmethod
    def from_trajectory(cls, trajectory, config=None, refocus_ratio=None):
        times = np.asarray(trajectory.times)
        records = np.asarray(trajectory.populations, dtype=float).reshape(-1, 4)
        pops = records[:, :3]
        return cls(
            times=times,
            populations=pops,
            remainders=records[:, 3],
            fidelity=float(pops[-1, 2]),
            max_middle=float(pops[:, 1].max()),
            refocus_ratio=refocus_ratio,
            config=config or {},
        )
