"""Population bookkeeping, transfer runs, sweeps and figures."""

from .populations import (
    PartitionEntry,
    RegionPartition,
    Populations,
    RefocusReport,
    RunResult,
    partition,
    partition_field,
    populations,
    refocus_check,
)
from .runs import (
    ModelScenario,
    ChipScenario,
    initial_model_state,
    run_model_scenario,
    prepare_localized_ground_state,
    run_chip_scenario,
    left_well_seed,
)
from .sweeps import SweepResult, sweep_offset, sweep_length

__all__ = [
    'PartitionEntry',
    'RegionPartition',
    'Populations',
    'RefocusReport',
    'RunResult',
    'partition',
    'partition_field',
    'populations',
    'refocus_check',
    'ModelScenario',
    'ChipScenario',
    'initial_model_state',
    'run_model_scenario',
    'prepare_localized_ground_state',
    'run_chip_scenario',
    'left_well_seed',
    'SweepResult',
    'sweep_offset',
    'sweep_length',
]
