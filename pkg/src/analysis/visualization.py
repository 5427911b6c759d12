"""Post-hoc figures for transfer runs, sweeps and chip potentials."""

import logging

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ..config import FIGURE_SIZE, DPI, COLORMAP
from ..potentials.model import path_position
from ..potentials.chip import potential_field_at_time

logger = logging.getLogger(__name__)

_GUIDE_COLORS = ("tab:blue", "tab:gray", "tab:red")
_GUIDE_LABELS = ("left", "middle", "right")


def _save(fig, path):
    fig.savefig(path, dpi=DPI, bbox_inches='tight')
    plt.close(fig)
    logger.info("Saved: %s", path.name)
    return path


def plot_density_snapshots(trajectory, system, path, count=3):
    """
    Density |psi|^2 at evenly spaced snapshots with the guide paths overlaid.

    Args:
        trajectory: RunTrajectory with field snapshots (snapshot_stride > 0).
        system: ModelGuideSystem used for the run.
        path: Output PNG path.
        count: Number of panels.
    """
    if not trajectory.snapshots:
        logger.warning("No field snapshots recorded; skipping density figure")
        return None
    grid = trajectory.grid
    s = trajectory.snapshot_stride
    x, y = grid.x[::s], grid.y[::s]
    picks = np.unique(np.linspace(0, len(trajectory.snapshots) - 1, count).astype(int))

    fig, axes = plt.subplots(1, len(picks), figsize=(FIGURE_SIZE[0] * len(picks) / 2, FIGURE_SIZE[1]),
                             squeeze=False)
    for ax, idx in zip(axes[0], picks):
        density = np.abs(trajectory.snapshots[idx]) ** 2
        ax.imshow(density.T, origin='lower', aspect='auto', cmap=COLORMAP,
                  extent=[x[0], x[-1], y[0], y[-1]])
        for guide, color in zip(system.paths, _GUIDE_COLORS):
            ax.plot(path_position(guide, y), y, color=color, lw=0.8, alpha=0.7)
        ax.set_title(f"t = {trajectory.snapshot_times[idx]:.1f}", fontsize=11)
        ax.set_xlabel("x")
    axes[0, 0].set_ylabel("y")
    plt.tight_layout()
    return _save(fig, path)


def plot_populations(results, path, labels=None):
    """
    Guide populations against time for one or more runs.

    Args:
        results: Sequence of RunResult (e.g. counter-intuitive and intuitive).
        path: Output PNG path.
        labels: Panel titles.
    """
    labels = labels or [r.config.get("ordering", "") for r in results]
    fig, axes = plt.subplots(1, len(results), figsize=(FIGURE_SIZE[0] * len(results), FIGURE_SIZE[1]),
                             squeeze=False, sharey=True)
    for ax, result, label in zip(axes[0], results, labels):
        for k in range(3):
            ax.plot(result.times, result.populations[:, k], color=_GUIDE_COLORS[k], label=_GUIDE_LABELS[k])
        ax.set_title(label, fontsize=11)
        ax.set_xlabel("t")
    axes[0, 0].set_ylabel("population")
    axes[0, 0].legend(fontsize=9)
    plt.tight_layout()
    return _save(fig, path)


def plot_three_level(trajectory, path):
    """Couplings and level populations of a three-level evolution."""
    fig, (top, bottom) = plt.subplots(2, 1, figsize=FIGURE_SIZE, sharex=True)
    top.plot(trajectory.times, trajectory.omega_p, label="pump")
    top.plot(trajectory.times, trajectory.omega_s, label="Stokes")
    top.set_ylabel("coupling")
    top.legend(fontsize=9)
    pops = trajectory.populations
    for k in range(3):
        bottom.plot(trajectory.times, pops[:, k], label=f"|{k + 1}>")
    bottom.set_xlabel("t")
    bottom.set_ylabel("population")
    bottom.legend(fontsize=9)
    plt.tight_layout()
    return _save(fig, path)


def plot_sweep(sweep, path):
    """Fidelity of both orderings against the sweep variable."""
    fig, ax = plt.subplots(figsize=FIGURE_SIZE)
    ax.plot(sweep.values, sweep.fidelity_ci, 'o-', label="counter-intuitive")
    ax.plot(sweep.values, sweep.fidelity_int, 's--', label="intuitive")
    ax.set_xlabel(sweep.variable)
    ax.set_ylabel("transfer to right guide")
    ax.set_ylim(0, 1.05)
    ax.legend(fontsize=9)
    return _save(fig, path)


def plot_chip_cross_sections(layouts, grid, path, titles=None, units=None):
    """
    Chip potential maps side by side (e.g. equal spacing and closest approach).

    Args:
        layouts: Static ChipLayout snapshots.
        grid: Grid2D in micrometers.
        path: Output PNG path.
    """
    titles = titles or [""] * len(layouts)
    fig, axes = plt.subplots(1, len(layouts), figsize=(FIGURE_SIZE[0] * len(layouts), FIGURE_SIZE[1]),
                             squeeze=False)
    for ax, layout, title in zip(axes[0], layouts, titles):
        field = potential_field_at_time(layout, 0.0, grid, units)
        im = ax.imshow(field.values.T, origin='lower', aspect='auto', cmap=COLORMAP,
                       extent=[grid.x[0], grid.x[-1], grid.y[0], grid.y[-1]])
        ax.set_title(title, fontsize=11)
        ax.set_xlabel("x (um)")
        plt.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
    axes[0, 0].set_ylabel("h (um)")
    plt.tight_layout()
    return _save(fig, path)
