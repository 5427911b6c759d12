"""Split-operator propagation of the 2D Schroedinger equation (hbar = m = 1)."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from scipy.fft import fft2, ifft2

from ..config import PHASE_GUARD, GROUND_STATE_TOLERANCE, GROUND_STATE_MAX_STEPS
from ..errors import StepGuardError, ConvergenceError, ConfigError
from ..grid.core import Wavefunction
from ..grid.observables import energy, expectation_position, widths, check_edge_density
from .fields import PotentialField

logger = logging.getLogger(__name__)

REAL_TIME = "real-time"
IMAGINARY_TIME = "imaginary-time"


@dataclass
class PropagatorConfig:
    """
    Settings for a propagation.

    Attributes:
        dt: Time step.
        t_final: Total duration (0 gives the identity).
        potential: Static PotentialField, or callable t -> PotentialField.
        snapshot_interval: Steps between recorded observables.
        snapshot_stride: Spatial decimation of stored wavefunction snapshots
            (0 disables field snapshots).
        mode: 'real-time' or 'imaginary-time'.
        workers: Threads per FFT.
    """

    dt: float
    t_final: float
    potential: Union[PotentialField, Callable[[float], PotentialField]]
    snapshot_interval: int = 100
    snapshot_stride: int = 0
    mode: str = REAL_TIME
    workers: Optional[int] = None

    def __post_init__(self):
        if self.dt <= 0:
            raise ConfigError("dt must be positive")
        if self.t_final < 0:
            raise ConfigError("t_final must be non-negative")
        if self.snapshot_interval < 1:
            raise ConfigError("snapshot_interval must be at least 1")
        if self.mode not in (REAL_TIME, IMAGINARY_TIME):
            raise ConfigError(f"unknown propagation mode '{self.mode}'")

    @property
    def is_time_dependent(self):
        return not isinstance(self.potential, PotentialField)

    @property
    def n_steps(self):
        return int(round(self.t_final / self.dt))

    def potential_at(self, t):
        return self.potential(t) if self.is_time_dependent else self.potential


@dataclass
class RunTrajectory:
    """Observable time series and decimated snapshots of one propagation."""

    grid: object
    times: list = field(default_factory=list)
    norms: list = field(default_factory=list)
    energies: list = field(default_factory=list)
    centers: list = field(default_factory=list)
    widths: list = field(default_factory=list)
    populations: list = field(default_factory=list)
    snapshot_times: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    snapshot_stride: int = 0
    final_state: Optional[Wavefunction] = None

    def as_arrays(self):
        return {
            "t": np.asarray(self.times),
            "norm": np.asarray(self.norms),
            "energy": np.asarray(self.energies),
            "center": np.asarray(self.centers).reshape(-1, 2),
            "width": np.asarray(self.widths).reshape(-1, 2),
            "populations": np.asarray(self.populations, dtype=float) if self.populations else None,
        }


def check_step_guards(grid, potential, dt):
    """
    Validate dt against the potential and kinetic phase per step.

    Raises:
        StepGuardError: If dt*max|V| or dt*k_max^2/2 reaches the guard.
    """
    potential_phase = dt * potential.max_abs
    if potential_phase >= PHASE_GUARD:
        raise StepGuardError(f"dt*max|V| = {potential_phase:.3g} >= {PHASE_GUARD}")
    kinetic_phase = dt * 0.5 * grid.k_max_squared
    if kinetic_phase >= PHASE_GUARD:
        raise StepGuardError(f"dt*k_max^2/2 = {kinetic_phase:.3g} >= {PHASE_GUARD}")


def _factors(grid, potential, dt, imaginary):
    if imaginary:
        half = np.exp(-0.5 * dt * potential.values)
        kinetic = np.exp(-0.5 * dt * grid.k_squared)
    else:
        half = np.exp(-0.5j * dt * potential.values)
        kinetic = np.exp(-0.5j * dt * grid.k_squared)
    return half, kinetic


def _strang(amplitudes, half, kinetic, workers):
    amplitudes = half * amplitudes
    amplitudes = ifft2(kinetic * fft2(amplitudes, workers=workers), workers=workers)
    return half * amplitudes


def step(psi, potential, dt, imaginary=False, workers=None):
    """
    Advance psi by one Strang step exp(-iV dt/2) exp(-iT dt) exp(-iV dt/2).

    Args:
        psi: Wavefunction.
        potential: PotentialField on the same grid.
        dt: Time step.
        imaginary: Use imaginary time (no renormalization here).

    Returns:
        New Wavefunction.

    Raises:
        StepGuardError: Real-time step violating the phase guards.
    """
    if not imaginary:
        check_step_guards(psi.grid, potential, dt)
    half, kinetic = _factors(psi.grid, potential, dt, imaginary)
    return Wavefunction(psi.grid, _strang(psi.amplitudes, half, kinetic, workers))


def _record(trajectory, psi, potential, t, populations_hook, workers):
    check_edge_density(psi)
    trajectory.times.append(t)
    trajectory.norms.append(psi.norm())
    trajectory.energies.append(energy(psi, potential, workers=workers))
    trajectory.centers.append(expectation_position(psi))
    trajectory.widths.append(widths(psi))
    if populations_hook is not None:
        trajectory.populations.append(tuple(populations_hook(psi, potential, t)))
    if trajectory.snapshot_stride:
        s = trajectory.snapshot_stride
        trajectory.snapshot_times.append(t)
        trajectory.snapshots.append(np.array(psi.amplitudes[::s, ::s]))


def propagate(psi, config, populations_hook=None):
    """
    Propagate psi for config.t_final, recording observables.

    Time-dependent potentials are sampled at the step midpoint t + dt/2.

    Args:
        psi: Initial Wavefunction.
        config: PropagatorConfig.
        populations_hook: Optional callable (psi, potential, t) returning the
            per-basin populations (left, middle, right[, remainder]).

    Returns:
        RunTrajectory.

    Raises:
        EdgeDensityError: Density reached the boundary at a recorded step.
        StepGuardError: dt too large for the potential or grid.
    """
    grid = psi.grid
    dt = config.dt
    n_steps = config.n_steps
    imaginary = config.mode == IMAGINARY_TIME
    trajectory = RunTrajectory(grid=grid, snapshot_stride=config.snapshot_stride)

    amplitudes = np.array(psi.amplitudes)
    factors = None
    if not config.is_time_dependent:
        if not imaginary:
            check_step_guards(grid, config.potential, dt)
        factors = _factors(grid, config.potential, dt, imaginary)

    _record(trajectory, psi, config.potential_at(0.0), 0.0, populations_hook, config.workers)
    logger.info("Propagating %d steps of dt=%.4g (%s)", n_steps, dt, config.mode)

    for k in range(n_steps):
        t = k * dt
        if config.is_time_dependent:
            midpoint = config.potential(t + 0.5 * dt)
            if not imaginary:
                check_step_guards(grid, midpoint, dt)
            half, kinetic = _factors(grid, midpoint, dt, imaginary)
        else:
            half, kinetic = factors
        amplitudes = _strang(amplitudes, half, kinetic, config.workers)
        if imaginary:
            amplitudes /= np.sqrt(np.sum(np.abs(amplitudes) ** 2) * grid.cell_area)

        done = k + 1
        if done % config.snapshot_interval == 0 or done == n_steps:
            t_now = done * dt
            current = Wavefunction(grid, amplitudes)
            _record(trajectory, current, config.potential_at(t_now), t_now, populations_hook, config.workers)
            logger.debug("t=%.4g norm=%.12f energy=%.8g", t_now, trajectory.norms[-1], trajectory.energies[-1])

    trajectory.final_state = Wavefunction(grid, amplitudes)
    return trajectory


def ground_state(potential, seed, dt=0.01, tolerance=GROUND_STATE_TOLERANCE,
                 max_steps=GROUND_STATE_MAX_STEPS, workers=None):
    """
    Relax a seed to the ground state by imaginary-time propagation.

    Stops when the relative energy change per step drops below tolerance.

    Args:
        potential: PotentialField.
        seed: Wavefunction with nonzero ground-state overlap.
        dt: Imaginary time step.
        tolerance: Relative energy change per step.
        max_steps: Step budget.

    Returns:
        Normalized ground-state Wavefunction.

    Raises:
        ConvergenceError: If the budget is exhausted.
    """
    grid = seed.grid
    half, kinetic = _factors(grid, potential, dt, imaginary=True)
    psi = seed.normalized()
    previous = energy(psi, potential, workers=workers)

    for n in range(1, max_steps + 1):
        amplitudes = _strang(psi.amplitudes, half, kinetic, workers)
        psi = Wavefunction(grid, amplitudes).normalized()
        current = energy(psi, potential, workers=workers)
        change = previous - current
        if change < -1e-12 * max(abs(current), 1.0):
            logger.warning("Imaginary-time energy increased by %.3g at step %d", -change, n)
        scale = abs(current) if current != 0.0 else 1.0
        if abs(change) < tolerance * scale:
            logger.info("Ground state converged after %d steps, E=%.10g", n, current)
            return psi
        previous = current

    raise ConvergenceError(f"ground state not converged after {max_steps} steps (last change {change:.3g})")
