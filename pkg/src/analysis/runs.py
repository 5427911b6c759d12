"""Full 2D transfer runs for the model guides and the atom chip."""

import logging
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from ..config import (
    GUIDE_X_FAR, GUIDE_X_NEAR, COUPLING_LENGTH, GUIDE_OFFSET, LONGITUDINAL_OMEGA, START_OFFSET,
)
from ..errors import ConfigError
from ..grid.core import Grid2D, Wavefunction, make_gaussian
from ..potentials.chip import minima_energies, potential_field_at_time
from ..potentials.model import (
    COUNTER_INTUITIVE, GuideProfile, build_model_system, model_potential_field,
    path_position, transverse_ground_frequency,
)
from ..tdse.propagator import PropagatorConfig, ground_state, propagate
from .populations import RunResult, partition, partition_field, populations, refocus_check

logger = logging.getLogger(__name__)

# Added outside the starting basin while relaxing the chip initial state
_LOCALIZING_PENALTY = 1e3
_SEED_EDGE_WIDTHS = 9.0


@dataclass(frozen=True)
class ModelScenario:
    """
    Everything needed for one model-guide transfer run.

    Attributes:
        grid: Grid2D (x transverse, y longitudinal).
        dt: Real-time step.
        profile: GuideProfile of all three guides.
        x_far, x_near: Outer-guide distances from the central guide.
        coupling_length: Coupling-zone length L (approach width L/4).
        offset: |delta_z| between the two closest-approach points.
        omega_l: Longitudinal trap frequency.
        ordering: 'counter-intuitive' or 'intuitive'.
        start_offset: Initial displacement of the packet from the trap centre
            (it starts at y = -start_offset inside the left guide).
        transverse_mode: 0 for the ground mode, 1 for the first excited mode.
        t_final: Run length; defaults to the refocus time pi/omega_l.
    """

    grid: Grid2D
    dt: float
    profile: GuideProfile = field(default_factory=GuideProfile)
    x_far: float = GUIDE_X_FAR
    x_near: float = GUIDE_X_NEAR
    coupling_length: float = COUPLING_LENGTH
    offset: float = GUIDE_OFFSET
    omega_l: float = LONGITUDINAL_OMEGA
    ordering: str = COUNTER_INTUITIVE
    start_offset: float = START_OFFSET
    transverse_mode: int = 0
    t_final: Optional[float] = None
    snapshot_interval: int = 100
    snapshot_stride: int = 0
    workers: Optional[int] = None

    def __post_init__(self):
        if self.transverse_mode not in (0, 1):
            raise ConfigError("transverse_mode must be 0 or 1")
        if self.omega_l <= 0:
            raise ConfigError("model runs need a longitudinal trap (omega_l > 0)")

    def system(self):
        return build_model_system(
            profile=self.profile, x_far=self.x_far, x_near=self.x_near,
            coupling_length=self.coupling_length, offset=self.offset,
            omega_l=self.omega_l, ordering=self.ordering,
        )

    @property
    def duration(self):
        return self.t_final if self.t_final is not None else np.pi / self.omega_l

    def with_changes(self, **changes):
        return replace(self, **changes)

    def as_dict(self):
        return {
            "grid": self.grid.as_dict(), "dt": self.dt,
            "A": self.profile.A, "B": self.profile.B,
            "x_far": self.x_far, "x_near": self.x_near,
            "coupling_length": self.coupling_length, "offset": self.offset,
            "omega_l": self.omega_l, "ordering": self.ordering,
            "start_offset": self.start_offset, "transverse_mode": self.transverse_mode,
            "t_final": self.duration,
        }


def initial_model_state(system, grid, start_offset, transverse_mode=0):
    """
    Ground state of an isotropic harmonic trap matched to the guide, placed
    in the left guide at y = y_trap_center - start_offset.

    transverse_mode=1 multiplies by (x - x0) for the first excited mode.
    """
    omega_t = transverse_ground_frequency(system)
    sigma = 1.0 / np.sqrt(2.0 * system.mass * omega_t)
    y0 = system.y_trap_center - start_offset
    x0 = float(path_position(system.left_path, y0))
    psi = make_gaussian(grid, (x0, y0), (sigma, sigma))
    if transverse_mode == 1:
        X, _ = grid.mesh
        psi = Wavefunction(grid, psi.amplitudes * (X - x0)).normalized()
    return psi


def run_model_scenario(scenario):
    """
    Propagate a wavepacket through the three-guide coupler.

    Fidelity is the right-guide population at the end of the run, by default
    the refocus time pi/omega_l.

    Args:
        scenario: ModelScenario.

    Returns:
        (RunResult, RunTrajectory, PotentialField).
    """
    system = scenario.system()
    grid = scenario.grid
    potential = model_potential_field(system, grid)
    region = partition_field(potential, per_column=True)
    psi = initial_model_state(system, grid, scenario.start_offset, scenario.transverse_mode)

    config = PropagatorConfig(
        dt=scenario.dt, t_final=scenario.duration, potential=potential,
        snapshot_interval=scenario.snapshot_interval,
        snapshot_stride=scenario.snapshot_stride, workers=scenario.workers,
    )
    trajectory = propagate(psi, config, populations_hook=lambda p, _v, _t: populations(p, region))
    report = refocus_check(trajectory, scenario.omega_l)
    result = RunResult.from_trajectory(trajectory, config=scenario.as_dict(), refocus_ratio=report.ratio)
    logger.info("Model run (%s, offset=%.4g, L=%.4g): fidelity %.6f, max middle %.4g",
                scenario.ordering, scenario.offset, scenario.coupling_length,
                result.fidelity, result.max_middle)
    return result, trajectory, potential


@dataclass(frozen=True)
class ChipScenario:
    """
    One time-dependent atom-chip run.

    Attributes:
        layout: ChipLayout with wire trajectories attached (SI times).
        grid: Grid2D in micrometers (y is the height above the chip).
        dt: Step in solver time units.
        duration: Length of the wire sequence in seconds.
        settle: Extra time after the sequence before the fidelity readout (s).
        potential_cap: Ceiling on the referenced potential (solver units).
    """

    layout: object
    grid: Grid2D
    dt: float
    duration: float
    settle: float = 0.0
    potential_cap: Optional[float] = None
    ground_state_dt: float = 1e-3
    snapshot_interval: int = 100
    snapshot_stride: int = 0
    workers: Optional[int] = None

    def __post_init__(self):
        if self.duration <= 0 or self.settle < 0:
            raise ConfigError("chip runs need duration > 0 and settle >= 0")

    def as_dict(self):
        return {
            "grid": self.grid.as_dict(), "dt": self.dt,
            "duration": self.duration, "settle": self.settle,
            "potential_cap": self.potential_cap,
            "bias_field": self.layout.bias_field, "ioffe_field": self.layout.ioffe_field,
            "wires": [{"x": w.x_position, "current": w.current} for w in self.layout.wires],
        }


def prepare_localized_ground_state(potential, seed_center, seed_width, dt=1e-3, workers=None):
    """
    Relax into the left well only.

    Everything to the right of the first basin boundary of the valley floor
    is raised by a penalty while relaxing, so the result is the localized
    left-well state rather than the global ground state.
    """
    grid = potential.grid
    entry = partition(potential.values.min(axis=1), grid.x)
    X, _ = grid.mesh
    penalized = potential.with_penalty(X >= entry.boundaries[0], _LOCALIZING_PENALTY)
    seed = make_gaussian(grid, seed_center, (seed_width, seed_width))
    return ground_state(penalized, seed, dt=dt, workers=workers)


def left_well_seed(layout, grid, units):
    """
    Center and width of a Gaussian seed for the left chip well.

    The width is the harmonic ground-state width, narrowed where the well
    sits close to the grid edge so the seed still vanishes on the boundary.
    """
    left = minima_energies(layout, units)[0]
    x0, h0 = units.length_to_solver(left.x), units.length_to_solver(left.h)
    edge = min(x0 - grid.x_min, grid.x_max - x0, h0 - grid.y_min, grid.y_max - h0)
    if edge <= 0:
        raise ConfigError("the left chip well lies outside the propagation grid")
    width = min(1.0 / np.sqrt(2.0 * left.omega), edge / _SEED_EDGE_WIDTHS)
    return (x0, h0), width


def run_chip_scenario(scenario):
    """
    Propagate the left-well state while the outer wires approach and recede.

    Returns:
        (RunResult, RunTrajectory, potential generator).
    """
    layout = scenario.layout
    units = layout.default_units()
    grid = scenario.grid

    def potential_at(t):
        return potential_field_at_time(layout, t * units.time_scale, grid, units, cap=scenario.potential_cap)

    start = potential_at(0.0)
    center, width = left_well_seed(layout.at_time(0.0), grid, units)
    psi = prepare_localized_ground_state(start, center, width, dt=scenario.ground_state_dt,
                                         workers=scenario.workers)

    t_final = units.time_to_solver(scenario.duration + scenario.settle)
    config = PropagatorConfig(
        dt=scenario.dt, t_final=t_final, potential=potential_at,
        snapshot_interval=scenario.snapshot_interval,
        snapshot_stride=scenario.snapshot_stride, workers=scenario.workers,
    )
    hook = lambda p, v, _t: populations(p, partition_field(v, per_column=False))
    trajectory = propagate(psi, config, populations_hook=hook)
    result = RunResult.from_trajectory(trajectory, config=scenario.as_dict())
    logger.info("Chip run: fidelity %.6f, final middle %.4g", result.fidelity, result.populations[-1, 1])
    return result, trajectory, potential_at
