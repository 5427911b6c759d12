"""Idealized three-waveguide potential built from stitched tanh^2 guides."""

from dataclasses import dataclass

import numpy as np

from ..config import (
    GUIDE_HEIGHT_A, GUIDE_INVERSE_WIDTH_B, GUIDE_X_FAR, GUIDE_X_NEAR,
    COUPLING_LENGTH, GUIDE_OFFSET, LONGITUDINAL_OMEGA,
)
from ..errors import ConfigError
from ..tdse.fields import PotentialField

COUNTER_INTUITIVE = "counter-intuitive"
INTUITIVE = "intuitive"
ORDERINGS = (COUNTER_INTUITIVE, INTUITIVE)


@dataclass(frozen=True)
class GuideProfile:
    """Transverse guide profile V = A tanh^2(B (x - f(y)))."""

    A: float = GUIDE_HEIGHT_A
    B: float = GUIDE_INVERSE_WIDTH_B

    def __post_init__(self):
        if self.A <= 0 or self.B <= 0:
            raise ConfigError("guide profile needs A > 0 and B > 0")


@dataclass(frozen=True)
class GuidePath:
    """
    Transverse guide position f(y) with a Gaussian approach bump.

    f(y) = x_far - (x_far - x_near) exp(-(y - y_center)^2 / (2 approach_width^2))
    """

    x_far: float
    x_near: float
    y_center: float = 0.0
    approach_width: float = 1.0

    def __post_init__(self):
        if self.approach_width <= 0:
            raise ConfigError("approach_width must be positive")
        if self.x_far != 0.0 and not abs(self.x_near) < abs(self.x_far):
            raise ConfigError("outer guide needs |x_near| < |x_far|")

    @classmethod
    def straight(cls, x=0.0):
        return cls(x_far=x, x_near=x)

    @property
    def is_straight(self):
        return self.x_far == self.x_near


def path_position(path, y):
    """Return f(y) for a guide path (scalar or array y)."""
    if path.is_straight:
        return np.zeros_like(np.asarray(y, dtype=float)) + path.x_far
    bump = np.exp(-(np.asarray(y) - path.y_center) ** 2 / (2.0 * path.approach_width ** 2))
    return path.x_far - (path.x_far - path.x_near) * bump


def single_guide_potential(profile, path, x, y):
    """Return A tanh^2(B (x - f(y)))."""
    return profile.A * np.tanh(profile.B * (np.asarray(x) - path_position(path, y))) ** 2


@dataclass(frozen=True)
class ModelGuideSystem:
    """
    Three stitched guides plus a longitudinal harmonic trap.

    delta_z is right_path.y_center - left_path.y_center; a negative value
    means the right (initially empty) guide approaches first as the packet
    travels towards +y, which is the counter-intuitive arrangement.
    """

    profile: GuideProfile
    left_path: GuidePath
    center_path: GuidePath
    right_path: GuidePath
    delta_z: float
    omega_l: float
    y_trap_center: float = 0.0
    mass: float = 1.0

    def __post_init__(self):
        if abs(self.delta_z - (self.right_path.y_center - self.left_path.y_center)) > 1e-12:
            raise ConfigError("delta_z disagrees with the guide path centers")
        if self.omega_l < 0:
            raise ConfigError("omega_l must be non-negative")

    @property
    def paths(self):
        return (self.left_path, self.center_path, self.right_path)

    @property
    def is_counter_intuitive(self):
        return self.right_path.y_center < self.left_path.y_center

    def mirrored(self):
        """Reflect x -> -x, swapping the outer guides."""
        def flip(path):
            return GuidePath(-path.x_far, -path.x_near, path.y_center, path.approach_width)
        return ModelGuideSystem(
            self.profile, flip(self.right_path), flip(self.center_path), flip(self.left_path),
            -self.delta_z, self.omega_l, self.y_trap_center, self.mass,
        )


def longitudinal_potential(system, y):
    return 0.5 * system.mass * system.omega_l ** 2 * (np.asarray(y) - system.y_trap_center) ** 2


def stitched_potential(system, x, y):
    """Pointwise minimum of the three guides plus the longitudinal trap."""
    guides = [single_guide_potential(system.profile, path, x, y) for path in system.paths]
    return np.minimum(np.minimum(guides[0], guides[1]), guides[2]) + longitudinal_potential(system, y)


def transverse_ground_frequency(system):
    """Harmonic frequency of a single guide, B sqrt(2A/m)."""
    return system.profile.B * np.sqrt(2.0 * system.profile.A / system.mass)


def refocus_time(system):
    """Half a longitudinal oscillation period, pi/omega_l."""
    return np.pi / system.omega_l


def build_model_system(profile=None, x_far=GUIDE_X_FAR, x_near=GUIDE_X_NEAR,
                       coupling_length=COUPLING_LENGTH, offset=GUIDE_OFFSET,
                       omega_l=LONGITUDINAL_OMEGA, ordering=COUNTER_INTUITIVE,
                       y_trap_center=0.0):
    """
    Build the standard arrangement: left guide at -x_far, central guide at 0,
    right guide at +x_far, closest-approach points separated by |offset|.

    The coupling-zone length L sets approach_width = L/4. The trap is centred
    midway between the two closest-approach points.

    Args:
        profile: GuideProfile (defaults to A=20, B=0.5).
        x_far: Asymptotic distance of the outer guides from the centre.
        x_near: Distance at closest approach.
        coupling_length: Coupling-zone length L.
        offset: Magnitude of the longitudinal offset between closest approaches.
        omega_l: Longitudinal trap frequency.
        ordering: 'counter-intuitive' or 'intuitive'.

    Returns:
        ModelGuideSystem.
    """
    if ordering not in ORDERINGS:
        raise ConfigError(f"unknown ordering '{ordering}'")
    if coupling_length <= 0:
        raise ConfigError("coupling_length must be positive")
    profile = profile or GuideProfile()
    width = coupling_length / 4.0
    # The packet travels towards +y; the right guide comes first when counter-intuitive
    sign = -1.0 if ordering == COUNTER_INTUITIVE else 1.0
    y_right = y_trap_center + sign * abs(offset) / 2.0
    y_left = y_trap_center - sign * abs(offset) / 2.0
    return ModelGuideSystem(
        profile=profile,
        left_path=GuidePath(-x_far, -x_near, y_left, width),
        center_path=GuidePath.straight(0.0),
        right_path=GuidePath(x_far, x_near, y_right, width),
        delta_z=y_right - y_left,
        omega_l=omega_l,
        y_trap_center=y_trap_center,
    )


def model_potential_field(system, grid):
    """Sample the stitched potential on a grid (x transverse, y longitudinal)."""
    X, Y = grid.mesh
    return PotentialField(grid, stitched_potential(system, X, Y), provenance="model")
