"""Coupling pulse shapes and schedules."""

from dataclasses import dataclass

import numpy as np

from ..config import PULSE_PEAK, PULSE_WIDTH, PULSE_SEPARATION
from ..errors import ConfigError
from ..potentials.model import COUNTER_INTUITIVE, ORDERINGS

PULSE_SHAPES = ("gaussian", "box", "sin2")


@dataclass(frozen=True)
class Pulse:
    """
    Single coupling pulse.

    gaussian: peak exp(-(t-center)^2 / 2 width^2)
    box:      peak on |t-center| <= width, else 0
    sin2:     peak sin^2(pi (t-center+width) / 2 width) on |t-center| <= width
    """

    peak: float
    center: float
    width: float
    shape: str = "gaussian"

    def __post_init__(self):
        if self.peak < 0:
            raise ConfigError("pulse peak must be non-negative")
        if self.width <= 0:
            raise ConfigError("pulse width must be positive")
        if self.shape not in PULSE_SHAPES:
            raise ConfigError(f"unknown pulse shape '{self.shape}'")

    def value(self, t):
        s = np.asarray(t, dtype=float) - self.center
        if self.shape == "gaussian":
            return self.peak * np.exp(-s ** 2 / (2.0 * self.width ** 2))
        inside = np.abs(s) <= self.width
        if self.shape == "box":
            return np.where(inside, self.peak, 0.0)
        return np.where(inside, self.peak * np.sin(np.pi * (s + self.width) / (2.0 * self.width)) ** 2, 0.0)

    def derivative(self, t):
        s = np.asarray(t, dtype=float) - self.center
        if self.shape == "gaussian":
            return -s / self.width ** 2 * self.value(t)
        if self.shape == "box":
            return np.zeros_like(s)
        inside = np.abs(s) <= self.width
        phase = np.pi * (s + self.width) / (2.0 * self.width)
        return np.where(inside, self.peak * np.pi / (2.0 * self.width) * np.sin(2.0 * phase), 0.0)


@dataclass(frozen=True)
class PulseSchedule:
    """Pump (|1>-|2>) and Stokes (|2>-|3>) couplings."""

    pump: Pulse
    stokes: Pulse

    @property
    def is_counter_intuitive(self):
        return self.stokes.center < self.pump.center

    @property
    def max_coupling(self):
        return max(self.pump.peak, self.stokes.peak)

    def omega_p(self, t):
        return self.pump.value(t)

    def omega_s(self, t):
        return self.stokes.value(t)

    def mirrored(self):
        """Swap the roles of the pump and Stokes pulses (|1> <-> |3>)."""
        return PulseSchedule(pump=self.stokes, stokes=self.pump)

    def scaled(self, factor):
        def scale(p):
            return Pulse(p.peak * factor, p.center, p.width, p.shape)
        return PulseSchedule(scale(self.pump), scale(self.stokes))


def build_schedule(peak=PULSE_PEAK, width=PULSE_WIDTH, separation=PULSE_SEPARATION,
                   ordering=COUNTER_INTUITIVE, shape="gaussian", t_mid=0.0):
    """
    Two equal pulses centered at t_mid -/+ separation/2.

    Counter-intuitive puts the Stokes pulse first.
    """
    if ordering not in ORDERINGS:
        raise ConfigError(f"unknown ordering '{ordering}'")
    first, second = t_mid - separation / 2.0, t_mid + separation / 2.0
    if ordering == COUNTER_INTUITIVE:
        stokes_center, pump_center = first, second
    else:
        pump_center, stokes_center = first, second
    return PulseSchedule(
        pump=Pulse(peak, pump_center, width, shape),
        stokes=Pulse(peak, stokes_center, width, shape),
    )
