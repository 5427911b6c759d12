"""Result persistence: CSV tables, HDF5 snapshots and the run manifest."""

import hashlib
import json
import logging
import time
from pathlib import Path

import h5py
import numpy as np

from .. import __version__

logger = logging.getLogger(__name__)

CSV_FORMAT = '%.17g'
MANIFEST_NAME = "manifest.json"
ERROR_NAME = "error.txt"
POTENTIAL_CORNER = "x\\y"


def write_csv(path, columns, rows):
    """
    Write a numeric table with a single header row.

    Args:
        path: Output file path.
        columns: Column names in fixed order.
        rows: 2D array-like (n_rows, len(columns)).
    """
    path = Path(path)
    rows = np.asarray(rows, dtype=float).reshape(-1, len(columns))
    np.savetxt(path, rows, fmt=CSV_FORMAT, delimiter=',', header=','.join(columns), comments='')
    logger.info("Saved: %s", path.name)
    return path


def read_csv(path):
    """Return (columns, rows) of a table written by write_csv."""
    with open(path) as f:
        columns = f.readline().strip().split(',')
    rows = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
    return columns, rows


def save_observables(run_dir, trajectory):
    """observables.csv: t, norm, energy, P_left, P_middle, P_right."""
    arrays = trajectory.as_arrays()
    n = len(arrays["t"])
    pops = arrays["populations"]
    pops = pops[:, :3] if pops is not None else np.full((n, 3), np.nan)
    rows = np.column_stack([arrays["t"], arrays["norm"], arrays["energy"], pops])
    return write_csv(Path(run_dir) / "data" / "observables.csv",
                     ["t", "norm", "energy", "P_left", "P_middle", "P_right"], rows)


def save_three_level(run_dir, trajectory):
    """three_level.csv: t, Omega_P, Omega_S, P1, P2, P3, adiabaticity."""
    rows = np.column_stack([
        trajectory.times, trajectory.omega_p, trajectory.omega_s,
        trajectory.populations, trajectory.metric,
    ])
    return write_csv(Path(run_dir) / "data" / "three_level.csv",
                     ["t", "Omega_P", "Omega_S", "P1", "P2", "P3", "adiabaticity"], rows)


def save_sweep(run_dir, sweep):
    columns = ["value", "fidelity_counterintuitive", "fidelity_intuitive",
               "max_middle_population_ci", "max_middle_population_int"]
    return write_csv(Path(run_dir) / "data" / f"sweep_{sweep.variable}.csv", columns, sweep.rows())


def save_tuning(run_dir, tuning, wells):
    """tuning.csv (one row) and wells.csv (one row per well)."""
    data_dir = Path(run_dir) / "data"
    first = write_csv(data_dir / "tuning.csv",
                      ["middle_current_A", "spread", "spread_at_outer_current", "reached", "iterations"],
                      [[tuning.current, tuning.spread, tuning.reference_spread, float(tuning.reached),
                        tuning.iterations]])
    second = write_csv(data_dir / "wells.csv",
                       ["x_m", "h_m", "potential", "omega", "ground_energy"],
                       [[w.x, w.h, w.potential, w.omega, w.ground_energy] for w in wells])
    return first, second


def save_potential(run_dir, field, name):
    """
    Potential matrix V[ix, iy] (solver units, offset removed).

    The header row holds the y coordinates after a corner label; each row
    starts with its x coordinate.
    """
    grid = field.grid
    columns = [POTENTIAL_CORNER] + [CSV_FORMAT % y for y in grid.y]
    rows = np.column_stack([grid.x, field.values])
    return write_csv(Path(run_dir) / "data" / f"potential_{name}.csv", columns, rows)


def read_potential(path):
    """Return (x, y, V) from a matrix written by save_potential."""
    columns, rows = read_csv(path)
    if columns[0] != POTENTIAL_CORNER:
        raise ValueError(f"{path} is not a potential matrix")
    return rows[:, 0], np.array(columns[1:], dtype=float), rows[:, 1:]


def save_snapshots(run_dir, trajectory, units):
    """
    Store decimated wavefunction snapshots in snapshots.h5 with a JSON sidecar.

    One complex128 dataset per snapshot time; grid, stride and unit factors
    are written as file attributes and repeated in snapshots.json.

    Returns:
        List of written paths (empty when no snapshots were recorded).
    """
    if not trajectory.snapshots:
        return []
    snap_dir = Path(run_dir) / "snapshots"
    h5_path = snap_dir / "snapshots.h5"
    meta = {
        "format": "hdf5, one complex128 dataset per snapshot, indexed [ix, iy]",
        "grid": trajectory.grid.as_dict(),
        "stride": trajectory.snapshot_stride,
        "units": units.as_dict(),
        "datasets": [],
    }
    with h5py.File(h5_path, 'w') as f:
        for attr, value in trajectory.grid.as_dict().items():
            f.attrs[attr] = value
        f.attrs["stride"] = trajectory.snapshot_stride
        for k, (t, amplitudes) in enumerate(zip(trajectory.snapshot_times, trajectory.snapshots)):
            name = f"psi_{k:05d}"
            dataset = f.create_dataset(name, data=amplitudes)
            dataset.attrs["t"] = t
            meta["datasets"].append({"name": name, "t": t})
    json_path = snap_dir / "snapshots.json"
    json_path.write_text(json.dumps(meta, indent=2))
    logger.info("Saved: %d snapshots to %s", len(trajectory.snapshots), h5_path.name)
    return [h5_path, json_path]


def load_snapshots(h5_path):
    """Return (times, list of arrays) from snapshots.h5."""
    with h5py.File(h5_path, 'r') as f:
        names = sorted(f.keys())
        times = [float(f[name].attrs["t"]) for name in names]
        arrays = [f[name][()] for name in names]
    return times, arrays


def _sha256(path):
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(1 << 20), b''):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(run_dir, config, units, started, extra=None):
    """
    Write manifest.json last: config echo, version, wall-clock, unit factors
    and a SHA-256 checksum of every other file in the run directory.
    """
    run_dir = Path(run_dir)
    files = sorted(p for p in run_dir.rglob('*')
                   if p.is_file() and p.name not in (MANIFEST_NAME, ERROR_NAME))
    manifest = {
        "version": __version__,
        "config": config,
        "units": units.as_dict() if units is not None else None,
        "wall_clock_seconds": time.time() - started,
        "snapshot_format": "snapshots/snapshots.h5 (HDF5) with snapshots/snapshots.json",
        "files": {str(p.relative_to(run_dir)): _sha256(p) for p in files},
    }
    if extra:
        manifest.update(extra)
    path = run_dir / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2, default=float))
    logger.info("Saved: %s (%d files)", MANIFEST_NAME, len(files))
    return path


def write_error(run_dir, error, kind=None):
    """Write the single-line error marker and return the line."""
    kind = kind or getattr(error, "kind", "runtime")
    line = f"error={kind} message={str(error).replace(chr(10), ' ')}"
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / ERROR_NAME).write_text(line + "\n")
    return line
