"""Resonant three-state model with counter-intuitive or intuitive couplings (hbar = 1)."""

import logging
from dataclasses import dataclass

import numpy as np

from ..config import THREE_LEVEL_STEP_GUARD, THREE_LEVEL_NORM_DRIFT
from ..errors import ConfigError, DarkStateUndefinedError, NormDriftError, StepGuardError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ThreeLevelState:
    """Amplitudes (c1, c2, c3) of |1>, |2>, |3>."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=np.complex128)
        if amplitudes.shape != (3,):
            raise ConfigError("a three-level state needs exactly three amplitudes")
        amplitudes.flags.writeable = False
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def basis(cls, index):
        amplitudes = np.zeros(3, dtype=np.complex128)
        amplitudes[index] = 1.0
        return cls(amplitudes)

    @property
    def populations(self):
        return np.abs(self.amplitudes) ** 2

    def norm(self):
        return float(np.sum(self.populations))


@dataclass
class ThreeLevelTrajectory:
    times: np.ndarray
    amplitudes: np.ndarray  # (n, 3)
    omega_p: np.ndarray
    omega_s: np.ndarray
    metric: np.ndarray

    @property
    def populations(self):
        return np.abs(self.amplitudes) ** 2

    @property
    def final_state(self):
        return ThreeLevelState(self.amplitudes[-1])


def _matrix(omega_p, omega_s):
    return -np.array([
        [0.0, omega_p, 0.0],
        [omega_p, 0.0, omega_s],
        [0.0, omega_s, 0.0],
    ], dtype=np.complex128)


def hamiltonian(schedule, t):
    """Return H(t) = -[[0, P, 0], [P, 0, S], [0, S, 0]]."""
    return _matrix(float(schedule.omega_p(t)), float(schedule.omega_s(t)))


def mixing_angle(omega_p, omega_s):
    if omega_p == 0.0 and omega_s == 0.0:
        raise DarkStateUndefinedError("mixing angle undefined when both couplings vanish")
    return float(np.arctan2(omega_p, omega_s))


def dark_state(schedule, t):
    """Return cos(theta)|1> - sin(theta)|3> with tan(theta) = P/S."""
    theta = mixing_angle(float(schedule.omega_p(t)), float(schedule.omega_s(t)))
    return ThreeLevelState([np.cos(theta), 0.0, -np.sin(theta)])


def adiabaticity_metric(schedule, t):
    """
    Local adiabaticity |d theta/dt| / sqrt(P^2 + S^2).

    Values much smaller than one indicate adiabatic following of the dark state.
    """
    p = np.asarray(schedule.omega_p(t), dtype=float)
    s = np.asarray(schedule.omega_s(t), dtype=float)
    gap2 = p ** 2 + s ** 2
    if np.any(gap2 == 0.0):
        raise DarkStateUndefinedError("adiabaticity undefined when both couplings vanish")
    dp = schedule.pump.derivative(t)
    ds = schedule.stokes.derivative(t)
    theta_dot = (s * dp - p * ds) / gap2
    return np.abs(theta_dot) / np.sqrt(gap2)


def evolve(initial, schedule, t_final, dt, t_start=0.0):
    """
    Integrate i c' = H(t) c with fixed-step fourth-order Runge-Kutta.

    Args:
        initial: ThreeLevelState at t_start.
        schedule: PulseSchedule.
        t_final: End time.
        dt: Step; dt * max coupling must stay below 0.1.
        t_start: Start time.

    Returns:
        ThreeLevelTrajectory including every step.

    Raises:
        StepGuardError: If the step is too coarse for the couplings.
        NormDriftError: If the norm drifts by more than 1e-6.
    """
    if dt <= 0 or t_final < t_start:
        raise ConfigError("need dt > 0 and t_final >= t_start")
    if dt * schedule.max_coupling >= THREE_LEVEL_STEP_GUARD:
        raise StepGuardError(
            f"dt*max(Omega) = {dt * schedule.max_coupling:.3g} >= {THREE_LEVEL_STEP_GUARD}; reduce dt")

    n_steps = int(round((t_final - t_start) / dt))
    times = t_start + dt * np.arange(n_steps + 1)
    omega_p = schedule.omega_p(times)
    omega_s = schedule.omega_s(times)
    half_times = times[:-1] + 0.5 * dt
    half_p = schedule.omega_p(half_times)
    half_s = schedule.omega_s(half_times)

    amplitudes = np.empty((n_steps + 1, 3), dtype=np.complex128)
    c = np.array(initial.amplitudes)
    amplitudes[0] = c
    initial_norm = initial.norm()

    for k in range(n_steps):
        h0 = _matrix(omega_p[k], omega_s[k])
        hm = _matrix(half_p[k], half_s[k])
        h1 = _matrix(omega_p[k + 1], omega_s[k + 1])
        k1 = -1j * (h0 @ c)
        k2 = -1j * (hm @ (c + 0.5 * dt * k1))
        k3 = -1j * (hm @ (c + 0.5 * dt * k2))
        k4 = -1j * (h1 @ (c + dt * k3))
        c = c + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        amplitudes[k + 1] = c

    drift = abs(float(np.sum(np.abs(c) ** 2)) - initial_norm)
    if drift > THREE_LEVEL_NORM_DRIFT:
        raise NormDriftError(f"norm drifted by {drift:.3g}; reduce dt")

    gap2 = omega_p ** 2 + omega_s ** 2
    metric = np.full_like(times, np.nan)
    defined = gap2 > 0
    metric[defined] = adiabaticity_metric(schedule, times[defined])
    logger.info("Three-level evolution: %d steps, final populations %s",
                n_steps, np.array2string(np.abs(c) ** 2, precision=6))
    return ThreeLevelTrajectory(times, amplitudes, omega_p, omega_s, metric)
