"""Time-dependent Schroedinger propagation."""

from .fields import PotentialField
from .propagator import (
    PropagatorConfig,
    RunTrajectory,
    REAL_TIME,
    IMAGINARY_TIME,
    check_step_guards,
    step,
    propagate,
    ground_state,
)

__all__ = [
    'PotentialField',
    'PropagatorConfig',
    'RunTrajectory',
    'REAL_TIME',
    'IMAGINARY_TIME',
    'check_step_guards',
    'step',
    'propagate',
    'ground_state',
]
