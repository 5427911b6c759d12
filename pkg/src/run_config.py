"""
Run configuration files.

A run config is a JSON document with the blocks `scenario`, `geometry`,
`propagation`, `schedule`, `output` and, for sweeps, `sweep`. Blocks are
parsed into frozen dataclasses; unknown keys and invalid values raise
ConfigError before any computation starts.
"""

import json
import logging
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from .config import (
    GUIDE_HEIGHT_A, GUIDE_INVERSE_WIDTH_B, GUIDE_X_FAR, GUIDE_X_NEAR, COUPLING_LENGTH,
    GUIDE_OFFSET, LONGITUDINAL_OMEGA, START_OFFSET, MODEL_GRID_SHAPE, CHIP_GRID_SHAPE,
    WIRE_SPACING_UM, CLOSEST_APPROACH_UM, OUTER_CURRENT_A, MIDDLE_CURRENT_A,
    BIAS_FIELD_G, IOFFE_FIELD_G, PULSE_PEAK, PULSE_WIDTH, PULSE_SEPARATION,
    RESULTS_DIR, SWEEP_POINTS,
)
from .errors import ConfigError, GridError
from .grid.core import Grid2D
from .analysis.runs import ChipScenario, ModelScenario
from .potentials.chip import build_chip_layout, with_schedule
from .potentials.model import COUNTER_INTUITIVE, ORDERINGS, GuideProfile
from .three_level.pulses import build_schedule

logger = logging.getLogger(__name__)

SCENARIOS = ("model", "chip", "three-level")


def _require_positive(block, *names):
    for name in names:
        value = getattr(block, name)
        if value is None or value <= 0:
            raise ConfigError(f"{type(block).__name__}.{name} must be positive (got {value})")


def _check_ordering(ordering):
    if ordering not in ORDERINGS:
        raise ConfigError(f"ordering must be one of {ORDERINGS} (got '{ordering}')")


@dataclass(frozen=True)
class GridBlock:
    nx: int
    ny: int
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        try:
            self.build()
        except (GridError, TypeError) as e:
            raise ConfigError(f"invalid propagation grid: {e}") from None

    def build(self):
        return Grid2D(self.nx, self.ny, self.x_min, self.x_max, self.y_min, self.y_max)


@dataclass(frozen=True)
class ModelGeometry:
    A: float = GUIDE_HEIGHT_A
    B: float = GUIDE_INVERSE_WIDTH_B
    x_far: float = GUIDE_X_FAR
    x_near: float = GUIDE_X_NEAR
    coupling_length: float = COUPLING_LENGTH
    omega_l: float = LONGITUDINAL_OMEGA
    start_offset: float = START_OFFSET
    transverse_mode: int = 0

    def __post_init__(self):
        _require_positive(self, "A", "B", "x_far", "x_near", "coupling_length", "omega_l", "start_offset")
        if self.x_near >= self.x_far:
            raise ConfigError("x_near must be smaller than x_far")
        if self.transverse_mode not in (0, 1):
            raise ConfigError("transverse_mode must be 0 or 1")


@dataclass(frozen=True)
class ChipGeometry:
    spacing_um: float = WIRE_SPACING_UM
    closest_approach_um: float = CLOSEST_APPROACH_UM
    outer_current_A: float = OUTER_CURRENT_A
    middle_current_A: float = MIDDLE_CURRENT_A
    bias_field_G: float = BIAS_FIELD_G
    ioffe_field_G: float = IOFFE_FIELD_G
    species: str = "li6"
    tune_middle_current: bool = False

    def __post_init__(self):
        _require_positive(self, "spacing_um", "closest_approach_um", "outer_current_A",
                          "middle_current_A", "bias_field_G", "ioffe_field_G")
        if self.closest_approach_um >= self.spacing_um:
            raise ConfigError("closest_approach_um must be smaller than spacing_um")


@dataclass(frozen=True)
class ThreeLevelGeometry:
    peak: float = PULSE_PEAK
    width: float = PULSE_WIDTH
    shape: str = "gaussian"

    def __post_init__(self):
        _require_positive(self, "peak", "width")


@dataclass(frozen=True)
class ModelSchedule:
    ordering: str = COUNTER_INTUITIVE
    offset: float = GUIDE_OFFSET

    def __post_init__(self):
        _check_ordering(self.ordering)
        if self.offset < 0:
            raise ConfigError("offset must be non-negative")


@dataclass(frozen=True)
class ChipSchedule:
    """Times in seconds; the sequence is centred at duration_s / 2."""

    ordering: str = COUNTER_INTUITIVE
    duration_s: float = 2e-3
    approach_duration_s: float = 2e-4
    offset_s: float = 2e-4
    settle_s: float = 2e-4

    def __post_init__(self):
        _check_ordering(self.ordering)
        _require_positive(self, "duration_s", "approach_duration_s")
        if self.offset_s < 0 or self.settle_s < 0:
            raise ConfigError("offset_s and settle_s must be non-negative")


@dataclass(frozen=True)
class ThreeLevelSchedule:
    ordering: str = COUNTER_INTUITIVE
    separation: float = PULSE_SEPARATION
    t_start: float = -8.0
    t_final: float = 8.0

    def __post_init__(self):
        _check_ordering(self.ordering)
        if self.t_final <= self.t_start:
            raise ConfigError("t_final must exceed t_start")


@dataclass(frozen=True)
class PropagationBlock:
    dt: float
    grid: Optional[GridBlock] = None
    t_final: Optional[float] = None
    snapshot_interval: int = 100
    snapshot_stride: int = 0
    potential_cap: Optional[float] = None
    ground_state_dt: float = 1e-3
    workers: Optional[int] = None

    def __post_init__(self):
        _require_positive(self, "dt", "snapshot_interval", "ground_state_dt")
        if self.snapshot_stride < 0:
            raise ConfigError("snapshot_stride must be non-negative")
        if self.t_final is not None and self.t_final < 0:
            raise ConfigError("t_final must be non-negative")
        if self.potential_cap is not None and self.potential_cap <= 0:
            raise ConfigError("potential_cap must be positive")


@dataclass(frozen=True)
class SweepBlock:
    offsets: Tuple[float, ...] = ()
    lengths: Tuple[float, ...] = ()


@dataclass(frozen=True)
class OutputBlock:
    directory: str = str(RESULTS_DIR / "run")


GEOMETRY = {"model": ModelGeometry, "chip": ChipGeometry, "three-level": ThreeLevelGeometry}
SCHEDULE = {"model": ModelSchedule, "chip": ChipSchedule, "three-level": ThreeLevelSchedule}
DEFAULT_GRIDS = {
    "model": GridBlock(MODEL_GRID_SHAPE[0], MODEL_GRID_SHAPE[1], -12.0, 12.0, -560.0, 560.0),
    "chip": GridBlock(CHIP_GRID_SHAPE[0], CHIP_GRID_SHAPE[1], -16.0, 16.0, 0.25, 64.25),
}


def _block(data, name):
    """Return a copy of an optional object-valued block."""
    value = data.get(name, {})
    if not isinstance(value, dict):
        raise ConfigError(f"'{name}' must be an object (got {type(value).__name__})")
    return dict(value)


def _numbers(values, where):
    if not isinstance(values, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
        raise ConfigError(f"'{where}' must be a list of numbers")
    return tuple(float(v) for v in values)


def _build(cls, data, where):
    """Instantiate a flat block, rejecting unknown keys."""
    if not isinstance(data, dict):
        raise ConfigError(f"'{where}' must be an object")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in '{where}': {', '.join(unknown)}")
    try:
        return cls(**data)
    except TypeError as e:
        raise ConfigError(f"invalid '{where}' block: {e}") from None


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    geometry: object
    propagation: PropagationBlock
    schedule: object
    output: OutputBlock = field(default_factory=OutputBlock)
    sweep: SweepBlock = field(default_factory=SweepBlock)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("run config must be a JSON object")
        unknown = sorted(set(data) - {f.name for f in fields(cls)})
        if unknown:
            raise ConfigError(f"unknown top-level key(s): {', '.join(unknown)}")
        scenario = data.get("scenario")
        if scenario not in SCENARIOS:
            raise ConfigError(f"scenario must be one of {SCENARIOS} (got '{scenario}')")

        propagation = _block(data, "propagation")
        if "dt" not in propagation:
            raise ConfigError("'propagation.dt' is required")
        if propagation.get("grid") is not None:
            propagation["grid"] = _build(GridBlock, propagation["grid"], "propagation.grid")
        else:
            propagation["grid"] = DEFAULT_GRIDS.get(scenario)

        sweep = {k: _numbers(v, f"sweep.{k}") for k, v in _block(data, "sweep").items()}
        sweep = _build(SweepBlock, sweep, "sweep")

        return cls(
            scenario=scenario,
            geometry=_build(GEOMETRY[scenario], _block(data, "geometry"), "geometry"),
            propagation=_build(PropagationBlock, propagation, "propagation"),
            schedule=_build(SCHEDULE[scenario], _block(data, "schedule"), "schedule"),
            output=_build(OutputBlock, _block(data, "output"), "output"),
            sweep=sweep,
        )

    def to_dict(self):
        data = asdict(self)
        data["sweep"] = {k: list(v) for k, v in data["sweep"].items()}
        return data

    def with_output(self, directory):
        return RunConfig(self.scenario, self.geometry, self.propagation, self.schedule,
                         OutputBlock(str(directory)), self.sweep)

    def require(self, scenario):
        if self.scenario != scenario:
            raise ConfigError(f"this command needs a '{scenario}' config (got '{self.scenario}')")

    def grid(self):
        if self.propagation.grid is None:
            raise ConfigError("this scenario needs a propagation grid")
        return self.propagation.grid.build()

    def model_scenario(self):
        self.require("model")
        g, p, s = self.geometry, self.propagation, self.schedule
        return ModelScenario(
            grid=self.grid(), dt=p.dt, profile=GuideProfile(g.A, g.B),
            x_far=g.x_far, x_near=g.x_near, coupling_length=g.coupling_length,
            offset=s.offset, omega_l=g.omega_l, ordering=s.ordering,
            start_offset=g.start_offset, transverse_mode=g.transverse_mode,
            t_final=p.t_final, snapshot_interval=p.snapshot_interval,
            snapshot_stride=p.snapshot_stride, workers=p.workers,
        )

    def chip_layout(self):
        self.require("chip")
        g = self.geometry
        return build_chip_layout(g.spacing_um, g.outer_current_A, g.middle_current_A,
                                 g.bias_field_G, g.ioffe_field_G, g.species)

    def chip_scenario(self, layout=None):
        """ChipScenario for this config; `layout` overrides the static layout (e.g. after tuning)."""
        layout = layout or self.chip_layout()
        s, p = self.schedule, self.propagation
        scheduled = with_schedule(layout, closest_um=self.geometry.closest_approach_um,
                                  t_mid=s.duration_s / 2.0, offset=s.offset_s,
                                  approach_duration=s.approach_duration_s, ordering=s.ordering)
        return ChipScenario(
            layout=scheduled, grid=self.grid(), dt=p.dt, duration=s.duration_s, settle=s.settle_s,
            potential_cap=p.potential_cap, ground_state_dt=p.ground_state_dt,
            snapshot_interval=p.snapshot_interval, snapshot_stride=p.snapshot_stride, workers=p.workers,
        )

    def pulse_schedule(self):
        self.require("three-level")
        g, s = self.geometry, self.schedule
        return build_schedule(peak=g.peak, width=g.width, separation=s.separation,
                              ordering=s.ordering, shape=g.shape)

    def sweep_values(self, kind):
        """Configured sweep values, or SWEEP_POINTS evenly spaced defaults."""
        if kind == "offsets":
            values = self.sweep.offsets or tuple(np.linspace(0.0, 2.0 * self.schedule.offset, SWEEP_POINTS))
        else:
            L = self.geometry.coupling_length
            values = self.sweep.lengths or tuple(np.linspace(0.25 * L, 1.5 * L, SWEEP_POINTS))
        return [float(v) for v in values]


def load_run_config(path):
    """
    Read and validate a run config file.

    Raises:
        ConfigError: On unreadable files, malformed JSON or schema violations.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as e:
        raise ConfigError(f"cannot read config '{path}': {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed config '{path}': {e.msg} at line {e.lineno}") from None
    config = RunConfig.from_dict(data)
    logger.info("Loaded %s config from %s", config.scenario, path)
    return config
