"""Three-level adiabatic passage model."""

from .pulses import PULSE_SHAPES, Pulse, PulseSchedule, build_schedule
from .dynamics import (
    ThreeLevelState,
    ThreeLevelTrajectory,
    hamiltonian,
    mixing_angle,
    dark_state,
    adiabaticity_metric,
    evolve,
)
from .coupling import (
    DoubleWellStates,
    double_well_potential,
    finite_difference_levels,
    double_well_states,
    coupling_from_separation,
)

__all__ = [
    'PULSE_SHAPES', 'Pulse', 'PulseSchedule', 'build_schedule',
    'ThreeLevelState', 'ThreeLevelTrajectory', 'hamiltonian', 'mixing_angle',
    'dark_state', 'adiabaticity_metric', 'evolve',
    'DoubleWellStates', 'double_well_potential', 'finite_difference_levels',
    'double_well_states', 'coupling_from_separation',
]
