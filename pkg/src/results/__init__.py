"""Run output files."""

from .io import (
    write_csv,
    read_csv,
    save_observables,
    save_three_level,
    save_sweep,
    save_tuning,
    save_potential,
    read_potential,
    save_snapshots,
    load_snapshots,
    write_manifest,
    write_error,
)

__all__ = [
    'write_csv',
    'read_csv',
    'save_observables',
    'save_three_level',
    'save_sweep',
    'save_tuning',
    'save_potential',
    'read_potential',
    'save_snapshots',
    'load_snapshots',
    'write_manifest',
    'write_error',
]
