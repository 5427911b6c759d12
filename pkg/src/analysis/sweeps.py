"""Offset and coupling-length sweeps over both orderings."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, TransferError
from ..potentials.model import COUNTER_INTUITIVE, INTUITIVE
from .runs import run_model_scenario

logger = logging.getLogger(__name__)

OFFSET = "delta_z"
LENGTH = "coupling_length"


@dataclass
class SweepResult:
    """
    One fidelity pair per sweep value.

    Failed points carry NaN and an entry in `errors` keyed by
    (value, ordering).
    """

    variable: str
    values: np.ndarray
    fidelity_ci: np.ndarray
    fidelity_int: np.ndarray
    max_middle_ci: np.ndarray
    max_middle_int: np.ndarray
    errors: dict = field(default_factory=dict)

    def rows(self):
        return np.column_stack([
            self.values, self.fidelity_ci, self.fidelity_int, self.max_middle_ci, self.max_middle_int,
        ])

    def best(self, ordering=COUNTER_INTUITIVE):
        series = self.fidelity_ci if ordering == COUNTER_INTUITIVE else self.fidelity_int
        if np.all(np.isnan(series)):
            return float("nan"), float("nan")
        idx = int(np.nanargmax(series))
        return float(self.values[idx]), float(series[idx])


def _run_point(scenario):
    try:
        result, _, _ = run_model_scenario(scenario)
        return result.fidelity, result.max_middle, None
    except TransferError as e:
        return np.nan, np.nan, f"{e.kind}: {e}"


def _sweep(variable, values, scenarios, threads):
    """Run every (value, ordering) job and aggregate keyed by value."""
    jobs = {}
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for value, ordering, scenario in scenarios:
            jobs[(value, ordering)] = pool.submit(_run_point, scenario)
    outcome = {key: future.result() for key, future in jobs.items()}

    values = np.asarray(sorted(set(values)), dtype=float)
    columns = {ordering: np.array([outcome[(v, ordering)][:2] for v in values], dtype=float)
               for ordering in (COUNTER_INTUITIVE, INTUITIVE)}
    errors = {key: out[2] for key, out in outcome.items() if out[2] is not None}
    for (value, ordering), message in sorted(errors.items()):
        logger.warning("Sweep point %s=%.4g (%s) failed: %s", variable, value, ordering, message)
    return SweepResult(
        variable=variable,
        values=values,
        fidelity_ci=columns[COUNTER_INTUITIVE][:, 0],
        fidelity_int=columns[INTUITIVE][:, 0],
        max_middle_ci=columns[COUNTER_INTUITIVE][:, 1],
        max_middle_int=columns[INTUITIVE][:, 1],
        errors=errors,
    )


def sweep_offset(base, values, threads=1):
    """
    Transfer fidelity versus the offset |delta_z| for both orderings.

    Args:
        base: ModelScenario supplying every other parameter.
        values: Offsets to run (0 is the simultaneous-approach reference).
        threads: Concurrent propagations.

    Returns:
        SweepResult.
    """
    values = [float(v) for v in values]
    if any(v < 0 for v in values):
        raise ConfigError("offsets are magnitudes and must be non-negative")
    scenarios = [(v, o, base.with_changes(offset=v, ordering=o))
                 for v in values for o in (COUNTER_INTUITIVE, INTUITIVE)]
    logger.info("Offset sweep over %d values with %d threads", len(values), threads)
    return _sweep(OFFSET, values, scenarios, threads)


def sweep_length(base, values, threads=1):
    """
    Transfer fidelity versus coupling-zone length L at fixed offset/L.

    Args:
        base: ModelScenario; its offset/coupling_length ratio is held fixed.
        values: Coupling lengths (positive).
        threads: Concurrent propagations.

    Returns:
        SweepResult.
    """
    values = [float(v) for v in values]
    if any(v <= 0 for v in values):
        raise ConfigError("coupling lengths must be positive")
    ratio = base.offset / base.coupling_length
    scenarios = [(v, o, base.with_changes(coupling_length=v, offset=ratio * v, ordering=o))
                 for v in values for o in (COUNTER_INTUITIVE, INTUITIVE)]
    logger.info("Length sweep over %d values (offset/L = %.4g) with %d threads", len(values), ratio, threads)
    return _sweep(LENGTH, values, scenarios, threads)
