"""
Command-line interface.

Every subcommand reads one run config, writes its results into the output
directory and finishes with manifest.json. Failures print a single
`error=<kind> message=<text>` line on stderr, leave error.txt in the output
directory (when known) and exit non-zero.
"""

import argparse
import logging
import sys
import time
from dataclasses import replace

import numpy as np

from . import __version__
from .analysis.populations import partition
from .analysis.runs import (
    initial_model_state, left_well_seed, prepare_localized_ground_state, run_chip_scenario,
    run_model_scenario,
)
from .analysis.sweeps import sweep_length, sweep_offset
from .config import get_run_dir
from .errors import ConfigError, TransferError
from .grid.core import Units
from .grid.observables import energy
from .potentials.chip import (
    minima_energies, potential_field_at_time, tune_middle_current, with_left_wire_at,
)
from .potentials.model import model_potential_field
from .results.io import (
    save_observables, save_potential, save_snapshots, save_sweep, save_three_level, save_tuning,
    write_csv, write_error, write_manifest,
)
from .run_config import load_run_config
from .three_level.dynamics import ThreeLevelState, evolve
from .tdse.propagator import ground_state

logger = logging.getLogger(__name__)

EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_IO = 4


def _summary(**values):
    print(" ".join(f"{k}={v:.10g}" if isinstance(v, float) else f"{k}={v}" for k, v in values.items()))


def _chip_layout(config):
    """Static layout, with the middle current tuned first when requested."""
    layout = config.chip_layout()
    if config.geometry.tune_middle_current:
        tuning = tune_middle_current(layout)
        layout = layout.with_middle_current(tuning.current)
    return layout


def cmd_model_run(config, run_dir, args):
    scenario = config.model_scenario()
    if args.threads:
        scenario = scenario.with_changes(workers=args.threads)
    result, trajectory, _ = run_model_scenario(scenario)
    save_observables(run_dir, trajectory)
    units = Units.dimensionless()
    save_snapshots(run_dir, trajectory, units)
    if args.plot:
        from .analysis.visualization import plot_density_snapshots, plot_populations
        plot_populations([result], run_dir / "figures" / "populations.png")
        plot_density_snapshots(trajectory, scenario.system(), run_dir / "figures" / "density.png")
    _summary(fidelity=result.fidelity, max_middle=result.max_middle, refocus_ratio=result.refocus_ratio)
    return units, {"results": {"fidelity": result.fidelity, "max_middle": result.max_middle,
                               "refocus_ratio": result.refocus_ratio}}


def cmd_chip_run(config, run_dir, args):
    layout = _chip_layout(config)
    scenario = config.chip_scenario(layout)
    if args.threads:
        scenario = replace(scenario, workers=args.threads)
    result, trajectory, _ = run_chip_scenario(scenario)
    save_observables(run_dir, trajectory)
    units = layout.default_units()
    save_snapshots(run_dir, trajectory, units)
    if args.plot:
        from .analysis.visualization import plot_populations
        plot_populations([result], run_dir / "figures" / "populations.png", labels=[config.schedule.ordering])
    final_middle = float(result.populations[-1, 1])
    _summary(fidelity=result.fidelity, final_middle=final_middle,
             middle_current=layout.wires[1].current)
    return units, {"results": {"fidelity": result.fidelity, "final_middle": final_middle,
                               "middle_current_A": layout.wires[1].current}}


def cmd_three_level_run(config, run_dir, args):
    schedule = config.pulse_schedule()
    trajectory = evolve(ThreeLevelState.basis(0), schedule, config.schedule.t_final,
                        config.propagation.dt, t_start=config.schedule.t_start)
    save_three_level(run_dir, trajectory)
    if args.plot:
        from .analysis.visualization import plot_three_level
        plot_three_level(trajectory, run_dir / "figures" / "three_level.png")
    final = trajectory.populations[-1]
    max_p2 = float(trajectory.populations[:, 1].max())
    _summary(P1=float(final[0]), P2=float(final[1]), P3=float(final[2]), max_P2=max_p2)
    return Units.dimensionless(), {"results": {"final_populations": final.tolist(), "max_P2": max_p2}}


def cmd_ground_state(config, run_dir, args):
    workers = args.threads or config.propagation.workers
    if config.scenario == "model":
        scenario = config.model_scenario()
        system = scenario.system()
        potential = model_potential_field(system, scenario.grid)
        seed = initial_model_state(system, scenario.grid, start_offset=0.0)
        psi = ground_state(potential, seed, dt=config.propagation.ground_state_dt, workers=workers)
        units = Units.dimensionless()
    elif config.scenario == "chip":
        layout = _chip_layout(config)
        units = layout.default_units()
        grid = config.grid()
        potential = potential_field_at_time(layout, 0.0, grid, units, cap=config.propagation.potential_cap)
        center, width = left_well_seed(layout, grid, units)
        psi = prepare_localized_ground_state(potential, center, width,
                                             dt=config.propagation.ground_state_dt, workers=workers)
    else:
        raise ConfigError("ground-state needs a 'model' or 'chip' config")

    e0 = energy(psi, potential, workers=workers)
    X, Y = psi.grid.mesh
    write_csv(run_dir / "data" / "ground_state.csv", ["x", "y", "psi_re", "psi_im"],
              np.column_stack([X.ravel(), Y.ravel(), psi.amplitudes.real.ravel(), psi.amplitudes.imag.ravel()]))
    _summary(energy=e0)
    return units, {"results": {"energy": e0, "potential_offset": potential.offset}}


def _cmd_sweep(config, run_dir, args, kind):
    base = config.model_scenario()
    values = config.sweep_values(kind)
    run = sweep_offset if kind == "offsets" else sweep_length
    sweep = run(base, values, threads=args.threads or 1)
    save_sweep(run_dir, sweep)
    if args.plot:
        from .analysis.visualization import plot_sweep
        plot_sweep(sweep, run_dir / "figures" / f"sweep_{sweep.variable}.png")
    best_value, best_fidelity = sweep.best()
    _summary(variable=sweep.variable, points=len(sweep.values), best_value=best_value,
             best_fidelity=best_fidelity, failed=len(sweep.errors))
    errors = {f"{value:.10g}/{ordering}": message for (value, ordering), message in sweep.errors.items()}
    return Units.dimensionless(), {"results": {"best_value": best_value, "best_fidelity": best_fidelity,
                                               "errors": errors}}


def cmd_sweep_offset(config, run_dir, args):
    return _cmd_sweep(config, run_dir, args, "offsets")


def cmd_sweep_length(config, run_dir, args):
    return _cmd_sweep(config, run_dir, args, "lengths")


def cmd_tune_current(config, run_dir, args):
    layout = config.chip_layout()
    units = layout.default_units()
    tuning = tune_middle_current(layout, units=units)
    wells = minima_energies(layout.with_middle_current(tuning.current), units)
    save_tuning(run_dir, tuning, wells)
    _summary(middle_current=tuning.current, spread=tuning.spread,
             spread_at_outer_current=tuning.reference_spread)
    return units, {"results": {"middle_current_A": tuning.current, "spread": tuning.spread,
                               "reached": tuning.reached}}


def cmd_potential_snapshot(config, run_dir, args):
    if config.scenario == "model":
        scenario = config.model_scenario()
        field = model_potential_field(scenario.system(), scenario.grid)
        save_potential(run_dir, field, "model")
        return Units.dimensionless(), {}
    if config.scenario != "chip":
        raise ConfigError("potential-snapshot needs a 'model' or 'chip' config")

    layout = _chip_layout(config)
    units = layout.default_units()
    grid = config.grid()
    closest = with_left_wire_at(layout, config.geometry.closest_approach_um)
    boundaries = {}
    for name, snapshot in (("equal_spacing", layout), ("closest_approach", closest)):
        field = potential_field_at_time(snapshot, 0.0, grid, units, cap=config.propagation.potential_cap)
        save_potential(run_dir, field, name)
        entry = partition(field.values.min(axis=1), grid.x)
        boundaries[name] = {"boundaries": list(entry.boundaries), "degraded": entry.degraded}
    if args.plot:
        from .analysis.visualization import plot_chip_cross_sections
        plot_chip_cross_sections([layout, closest], grid, run_dir / "figures" / "chip_potential.png",
                                 titles=["equal spacing", "closest approach"], units=units)
    return units, {"results": boundaries}


COMMANDS = {
    "model-run": (cmd_model_run, "Propagate a wavepacket through the model three-guide coupler"),
    "chip-run": (cmd_chip_run, "Time-dependent transfer between atom-chip wells"),
    "three-level-run": (cmd_three_level_run, "Integrate the resonant three-level model"),
    "ground-state": (cmd_ground_state, "Imaginary-time ground state of a model or chip potential"),
    "sweep-offset": (cmd_sweep_offset, "Transfer fidelity versus guide offset, both orderings"),
    "sweep-length": (cmd_sweep_length, "Transfer fidelity versus coupling length, both orderings"),
    "tune-current": (cmd_tune_current, "Equalize the chip well energies with the middle-wire current"),
    "potential-snapshot": (cmd_potential_snapshot, "Write potential cross-section data"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="sculpt-transfer",
                                     description="Adiabatic three-waveguide transfer simulations")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="Run config (JSON)")
        p.add_argument("--out", help="Output directory (overrides output.directory)")
        p.add_argument("--threads", type=int, default=0,
                       help="Concurrent sweep points, or FFT workers for single runs")
        p.add_argument("--seed", type=int, default=None, help="Reserved; runs are deterministic")
        p.add_argument("--quiet", action="store_true", help="Only log warnings and errors")
        p.add_argument("--plot", action="store_true", help="Also write figures")
    return parser


def _exit_code(error):
    if isinstance(error, ConfigError):
        return EXIT_CONFIG
    if isinstance(error, OSError):
        return EXIT_IO
    return EXIT_RUNTIME


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    if args.seed is not None:
        logger.debug("--seed %d ignored; runs are deterministic", args.seed)
    if args.threads < 0:
        args.threads = 0

    handler = COMMANDS[args.command][0]
    started = time.time()
    run_dir = args.out
    try:
        config = load_run_config(args.config)
        if args.out:
            config = config.with_output(args.out)
        run_dir = get_run_dir(config.output.directory)
        units, extra = handler(config, run_dir, args)
        extra = dict(extra, command=args.command)
        write_manifest(run_dir, config.to_dict(), units, started, extra)
    except (TransferError, OSError) as e:
        kind = e.kind if isinstance(e, TransferError) else "io"
        line = f"error={kind} message={e}"
        if run_dir is not None:
            try:
                line = write_error(run_dir, e, kind)
            except OSError:
                logger.warning("Could not write error.txt into %s", run_dir)
        print(line.replace("\n", " "), file=sys.stderr)
        return _exit_code(e)
    return 0


if __name__ == "__main__":
    sys.exit(main())
