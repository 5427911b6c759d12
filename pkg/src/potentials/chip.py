"""Magnetic potential above three current-carrying atom-chip wires.

Wires run along z in the chip plane h = 0. The simulation plane is the
(x, h) cross-section. All layout quantities are SI (m, A, T, s).
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from ..config import (
    MU_B, MU0_OVER_2PI, GAUSS, SPECIES, CHIP_LENGTH_SCALE,
    WIRE_SPACING_UM, CLOSEST_APPROACH_UM, OUTER_CURRENT_A, MIDDLE_CURRENT_A,
    BIAS_FIELD_G, IOFFE_FIELD_G,
)
from ..errors import ConfigError, ConvergenceError, SingularityError, WellsMergedError
from ..grid.core import Units
from ..tdse.fields import PotentialField
from .model import COUNTER_INTUITIVE, ORDERINGS

logger = logging.getLogger(__name__)

MICRON = 1e-6
_MERGED_PENALTY = 1e300


@dataclass(frozen=True)
class Atom:
    """
    Atomic species in a weak-field-seeking state.

    Attributes:
        mass: Mass in kg.
        m_F: Magnetic quantum number.
        g_F: Hyperfine Lande factor.
    """

    mass: float
    m_F: float
    g_F: float

    def __post_init__(self):
        if self.m_F * self.g_F <= 0:
            raise ConfigError("m_F * g_F must be positive for a weak-field-seeking state")

    @property
    def mu(self):
        """Effective magnetic moment m_F g_F mu_B in J/T."""
        return self.m_F * self.g_F * MU_B

    @classmethod
    def from_species(cls, name):
        try:
            return cls(**SPECIES[name])
        except KeyError:
            raise ConfigError(f"unknown species '{name}'") from None


@dataclass(frozen=True)
class WireTrajectory:
    """Gaussian-bump approach in time: x(t) = x_far - (x_far - x_near) exp(-(t-tc)^2/2w^2)."""

    x_far: float
    x_near: float
    t_center: float
    approach_duration: float

    def __post_init__(self):
        if self.approach_duration <= 0:
            raise ConfigError("approach_duration must be positive")

    def position(self, t):
        bump = np.exp(-(t - self.t_center) ** 2 / (2.0 * self.approach_duration ** 2))
        return self.x_far - (self.x_far - self.x_near) * bump


@dataclass(frozen=True)
class Wire:
    x_position: float
    current: float
    trajectory: Optional[WireTrajectory] = None

    def at_time(self, t):
        if self.trajectory is None:
            return self
        return Wire(self.trajectory.position(t), self.current, self.trajectory)


@dataclass(frozen=True)
class ChipLayout:
    """
    Wires (left to right), transverse bias field along x and Ioffe field along z.

    Attributes:
        wires: Tuple of Wire entries; three for the transfer geometry.
        bias_field: B_b in tesla, must be positive.
        ioffe_field: B_ip in tesla, non-negative (positive for trapping).
        atom: Atom species record.
    """

    wires: Tuple[Wire, ...]
    bias_field: float
    ioffe_field: float
    atom: Atom

    def __post_init__(self):
        if not self.wires:
            raise ConfigError("a chip layout needs at least one wire")
        if self.bias_field <= 0:
            raise ConfigError("bias field must be positive")
        if self.ioffe_field < 0:
            raise ConfigError("Ioffe field must be non-negative")

    def at_time(self, t):
        return replace(self, wires=tuple(w.at_time(t) for w in self.wires))

    def with_middle_current(self, current):
        if len(self.wires) != 3:
            raise ConfigError("middle current needs exactly three wires")
        left, middle, right = self.wires
        return replace(self, wires=(left, replace(middle, current=current), right))

    def default_units(self):
        return Units.for_species(self.atom.mass, CHIP_LENGTH_SCALE)


def field_at(layout, x, h, min_distance=1e-3 * MICRON):
    """
    Total magnetic field of all wires plus the uniform fields.

    Args:
        layout: ChipLayout.
        x, h: Transverse position and height in meters (scalars or arrays).
        min_distance: Closest allowed approach to a wire.

    Returns:
        (B_x, B_h, B_z) in tesla.

    Raises:
        SingularityError: If evaluated on a wire.
    """
    x = np.asarray(x, dtype=float)
    h = np.asarray(h, dtype=float)
    bx = np.full(np.broadcast(x, h).shape, layout.bias_field)
    bh = np.zeros_like(bx)
    for wire in layout.wires:
        dx = x - wire.x_position
        rho2 = dx ** 2 + h ** 2
        if np.any(rho2 < min_distance ** 2):
            raise SingularityError(f"field evaluated on the wire at x={wire.x_position:.3e} m")
        scale = MU0_OVER_2PI * wire.current / rho2
        bx = bx - scale * h
        bh = bh + scale * dx
    bz = np.full_like(bx, layout.ioffe_field)
    return bx, bh, bz


def field_magnitude(layout, x, h):
    bx, bh, bz = field_at(layout, x, h)
    return np.sqrt(bx ** 2 + bh ** 2 + bz ** 2)


def zeeman_potential(layout, x, h, units=None):
    """Return m_F g_F mu_B |B| at (x, h) in solver energy units."""
    units = units or layout.default_units()
    return units.energy_to_solver(layout.atom.mu * field_magnitude(layout, x, h))


def trap_bottom(layout, units=None):
    """U_z = m_F g_F mu_B B_ip in solver energy units."""
    units = units or layout.default_units()
    return units.energy_to_solver(layout.atom.mu * layout.ioffe_field)


def single_wire_height(current, bias_field):
    """r0 = (mu0/2pi) I/B_b."""
    return MU0_OVER_2PI * current / bias_field


def single_wire_frequency(current, bias_field, ioffe_field, atom):
    """Radial trap frequency (rad/s) of a single wire with Ioffe field."""
    r0 = single_wire_height(current, bias_field)
    return MU0_OVER_2PI * current / r0 ** 2 * np.sqrt(atom.mu / (atom.mass * ioffe_field))


def locate_minimum(layout, x0, h0):
    """
    Numerically locate a zero of the transverse field near (x0, h0).

    Returns:
        (x, h) in meters.
    """
    def objective(p):
        bx, bh, _ = field_at(layout, p[0] * MICRON, p[1] * MICRON)
        return float(bx ** 2 + bh ** 2) / layout.bias_field ** 2

    result = minimize(objective, x0=[x0 / MICRON, h0 / MICRON], method='Nelder-Mead',
                      options={'xatol': 1e-10, 'fatol': 1e-20, 'maxiter': 20000})
    if not result.success:
        raise ConvergenceError(f"field minimum search failed: {result.message}")
    return result.x[0] * MICRON, result.x[1] * MICRON


def transverse_zeros(layout):
    """
    All zeros of the transverse field in the complex plane w = x + i h.

    B_h + i B_x = sum_k mu I_k/(w - x_k) + i B_b, so the zeros are the roots
    of a polynomial of degree len(wires). Coordinates in meters.
    """
    positions = np.array([w.x_position for w in layout.wires]) / MICRON
    poly = 1j * layout.bias_field * np.poly(positions)
    for k, wire in enumerate(layout.wires):
        others = np.delete(positions, k)
        term = MU0_OVER_2PI * wire.current / MICRON * np.atleast_1d(np.poly(others))
        poly = poly + np.concatenate([[0.0], term])
    return np.roots(poly) * MICRON


@dataclass(frozen=True)
class WellMinimum:
    """
    One local minimum of the Zeeman potential.

    Attributes:
        x, h: Position in meters.
        potential: Potential at the minimum (solver units).
        omega: Isotropic harmonic frequency (solver units).
        ground_energy: potential + hbar*omega, the 2D zero-point energy added.
    """

    x: float
    h: float
    potential: float
    omega: float
    ground_energy: float


def minima_energies(layout, units=None, surface_clearance=0.0, merge_distance=0.05 * MICRON):
    """
    Locate the three wells of a three-wire layout.

    With an Ioffe field every zero of the transverse field is a minimum of
    |B| at exactly B_ip, so the wells are told apart by their curvature:
    near a zero the transverse field grows linearly and isotropically with
    gradient G = |sum mu I_k/(w0 - x_k)^2|, giving omega = G sqrt(mu/(m B_ip)).

    Args:
        layout: ChipLayout with three wires and a positive Ioffe field.
        units: Units for the solver-unit conversion.
        surface_clearance: Minimum height for a well to count (m).
        merge_distance: Two wells closer than this count as merged (m).

    Returns:
        Tuple of three WellMinimum records, left to right.

    Raises:
        WellsMergedError: If fewer than three distinct wells exist above the chip.
    """
    if len(layout.wires) != 3:
        raise ConfigError("minima analysis needs exactly three wires")
    if layout.ioffe_field <= 0:
        raise ConfigError("minima analysis needs a positive Ioffe field")
    units = units or layout.default_units()

    roots = transverse_zeros(layout)
    above = sorted((r for r in roots if r.imag > surface_clearance), key=lambda r: r.real)
    if len(above) != 3:
        raise WellsMergedError(f"found {len(above)} wells above the chip, expected 3")
    if min(abs(a - b) for a, b in zip(above[:-1], above[1:])) < merge_distance:
        raise WellsMergedError("two wells have merged")

    mu = layout.atom.mu
    wells = []
    for w0 in above:
        gradient = abs(sum(MU0_OVER_2PI * wire.current / (w0 - wire.x_position) ** 2
                           for wire in layout.wires))
        omega = units.frequency_to_solver(gradient * np.sqrt(mu / (layout.atom.mass * layout.ioffe_field)))
        potential = float(zeeman_potential(layout, w0.real, w0.imag, units))
        wells.append(WellMinimum(float(w0.real), float(w0.imag), potential, float(omega), potential + float(omega)))
    return tuple(wells)


def ground_energy_spread(layout, units=None):
    energies = [w.ground_energy for w in minima_energies(layout, units)]
    return max(energies) - min(energies)


@dataclass(frozen=True)
class TuningResult:
    current: float
    spread: float
    reference_spread: float
    reached: bool
    iterations: int


def tune_middle_current(layout, target=None, units=None, lower_fraction=1e-3, max_iterations=500):
    """
    Choose the middle-wire current that best equalizes the three well energies.

    Args:
        layout: Three-wire ChipLayout with equal outer currents.
        target: Desired spread (solver units); None accepts the optimum.
        units: Units for energies.

    Returns:
        TuningResult with the tuned current (A) and achieved spread.

    Raises:
        ConvergenceError: If the bounded search does not converge.
    """
    left, _, right = layout.wires
    if not np.isclose(left.current, right.current, rtol=1e-12):
        raise ConfigError("outer wire currents must be equal")
    outer = left.current

    def spread(current):
        try:
            return ground_energy_spread(layout.with_middle_current(current), units)
        except WellsMergedError:
            return _MERGED_PENALTY

    result = minimize_scalar(spread, bounds=(lower_fraction * outer, outer), method='bounded',
                             options={'xatol': 1e-9 * outer, 'maxiter': max_iterations})
    if not result.success:
        raise ConvergenceError(f"middle-current tuning failed: {result.message}")

    reference = spread(outer)
    current, best = float(result.x), float(result.fun)
    if reference <= best:
        current, best = outer, reference
    reached = target is None or best <= target
    if not reached:
        logger.warning("Spread %.4g above target %.4g; returning best found current %.6f A",
                       best, target, current)
    logger.info("Tuned middle current %.6f A (spread %.4g, at I_outer %.4g)", current, best, reference)
    return TuningResult(current, best, reference, reached, int(result.nfev))


def potential_field_at_time(layout, t, grid, units=None, cap=None):
    """
    Sample the Zeeman potential at time t on a (x, h) grid in micrometers.

    Values are referenced to the trap bottom U_z (stored as the field offset).

    Args:
        layout: ChipLayout (SI).
        t: Time in seconds.
        grid: Grid2D in solver lengths (y is the height h).
        units: Units (defaults to the layout's species at 1 um).
        cap: Optional ceiling on the referenced potential (solver units);
            regions far above the wells are flattened so the phase guard
            reflects the trapping region only.

    Raises:
        SingularityError: If the grid reaches the chip surface.
    """
    units = units or layout.default_units()
    if grid.y_min <= 0:
        raise SingularityError("evaluation window must lie above the chip surface (h > 0)")
    snapshot = layout.at_time(t)
    X, H = grid.mesh
    values = zeeman_potential(snapshot, X * units.length_scale, H * units.length_scale, units)
    offset = trap_bottom(layout, units)
    values = values - offset
    if cap is not None:
        values = np.minimum(values, cap)
    return PotentialField(grid, values, provenance="chip", offset=offset)


def build_chip_layout(spacing_um=WIRE_SPACING_UM, outer_current=OUTER_CURRENT_A,
                      middle_current=MIDDLE_CURRENT_A, bias_gauss=BIAS_FIELD_G,
                      ioffe_gauss=IOFFE_FIELD_G, species="li6"):
    """Three static wires at -spacing, 0, +spacing from SI config values."""
    d = spacing_um * MICRON
    return ChipLayout(
        wires=(Wire(-d, outer_current), Wire(0.0, middle_current), Wire(d, outer_current)),
        bias_field=bias_gauss * GAUSS,
        ioffe_field=ioffe_gauss * GAUSS,
        atom=Atom.from_species(species),
    )


def with_schedule(layout, closest_um=CLOSEST_APPROACH_UM, t_mid=0.0, offset=0.0,
                  approach_duration=1.0, ordering=COUNTER_INTUITIVE):
    """
    Attach approach trajectories to the outer wires.

    Population starts in the left well; in the counter-intuitive ordering
    the right wire reaches closest approach first.
    """
    if ordering not in ORDERINGS:
        raise ConfigError(f"unknown ordering '{ordering}'")
    left, middle, right = layout.wires
    sign = -1.0 if ordering == COUNTER_INTUITIVE else 1.0
    t_right = t_mid + sign * abs(offset) / 2.0
    t_left = t_mid - sign * abs(offset) / 2.0
    near = closest_um * MICRON
    return replace(layout, wires=(
        replace(left, trajectory=WireTrajectory(left.x_position, -near, t_left, approach_duration)),
        middle,
        replace(right, trajectory=WireTrajectory(right.x_position, near, t_right, approach_duration)),
    ))


def with_left_wire_at(layout, closest_um=CLOSEST_APPROACH_UM):
    """Static layout with only the left wire moved in to x = -closest_um."""
    left, *rest = layout.wires
    return replace(layout, wires=(Wire(-closest_um * MICRON, left.current),
                                  *(replace(w, trajectory=None) for w in rest)))
