"""Model and atom-chip waveguide potentials."""

from .model import (
    COUNTER_INTUITIVE,
    INTUITIVE,
    ORDERINGS,
    GuideProfile,
    GuidePath,
    ModelGuideSystem,
    path_position,
    single_guide_potential,
    stitched_potential,
    longitudinal_potential,
    transverse_ground_frequency,
    refocus_time,
    build_model_system,
    model_potential_field,
)
from .chip import (
    Atom,
    Wire,
    WireTrajectory,
    ChipLayout,
    WellMinimum,
    TuningResult,
    field_at,
    field_magnitude,
    zeeman_potential,
    trap_bottom,
    single_wire_height,
    single_wire_frequency,
    locate_minimum,
    transverse_zeros,
    minima_energies,
    tune_middle_current,
    potential_field_at_time,
    build_chip_layout,
    with_schedule,
    with_left_wire_at,
)

__all__ = [
    'COUNTER_INTUITIVE', 'INTUITIVE', 'ORDERINGS',
    'GuideProfile', 'GuidePath', 'ModelGuideSystem',
    'path_position', 'single_guide_potential', 'stitched_potential',
    'longitudinal_potential', 'transverse_ground_frequency', 'refocus_time',
    'build_model_system', 'model_potential_field',
    'Atom', 'Wire', 'WireTrajectory', 'ChipLayout', 'WellMinimum', 'TuningResult',
    'field_at', 'field_magnitude', 'zeeman_potential', 'trap_bottom',
    'single_wire_height', 'single_wire_frequency', 'locate_minimum',
    'transverse_zeros', 'minima_energies', 'tune_middle_current',
    'potential_field_at_time', 'build_chip_layout', 'with_schedule', 'with_left_wire_at',
]
