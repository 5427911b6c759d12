"""Configuration settings for Waveguide Transfer Sculptor."""

from pathlib import Path

from scipy import constants

# Project root directory
PROJECT_ROOT = Path(__file__).parent.parent

# Data directories
CONFIGS_DIR = PROJECT_ROOT / "configs"
RESULTS_DIR = PROJECT_ROOT / "results"


def get_run_dir(out_dir, subdirs=("data", "snapshots", "figures")):
    """
    Get the output directory for a single run.
    Creates the directory and subdirectories if they don't exist.

    Args:
        out_dir: Run output directory (str or Path).
        subdirs: Subdirectories to create inside it.

    Returns:
        Path to the run directory.
    """
    run_dir = Path(out_dir)
    for subdir in subdirs:
        (run_dir / subdir).mkdir(parents=True, exist_ok=True)
    return run_dir


# Physical constants (SI)
HBAR = constants.hbar
MU_B = constants.physical_constants["Bohr magneton"][0]
MU0_OVER_2PI = constants.mu_0 / (2.0 * constants.pi)
ATOMIC_MASS = constants.atomic_mass
GAUSS = 1e-4  # tesla per gauss

# Atomic species: stretched weak-field-seeking ground state (F = 3/2, m_F = 3/2)
SPECIES = {
    "li6": {"mass": 6.0151228874 * ATOMIC_MASS, "m_F": 1.5, "g_F": 2.0 / 3.0},
}

# Solver length unit for chip runs
CHIP_LENGTH_SCALE = 1e-6  # m

# Grid defaults (longitudinal x transverse for model runs)
MODEL_GRID_SHAPE = (128, 4096)  # (nx transverse, ny longitudinal)
CHIP_GRID_SHAPE = (256, 256)
MIN_GRID_POINTS = 16

# Model waveguide parameters (solver units, hbar = m = 1)
GUIDE_HEIGHT_A = 20.0
GUIDE_INVERSE_WIDTH_B = 0.5
GUIDE_X_FAR = 6.0
GUIDE_X_NEAR = 2.0
COUPLING_LENGTH = 160.0
GUIDE_OFFSET = 17.0
LONGITUDINAL_OMEGA = 0.01
START_OFFSET = 90.0

# Chip parameters (SI inputs as they appear in config files)
WIRE_SPACING_UM = 9.0
CLOSEST_APPROACH_UM = 4.5
OUTER_CURRENT_A = 1.0
MIDDLE_CURRENT_A = 0.7
BIAS_FIELD_G = 100.0
IOFFE_FIELD_G = 1.0

# Three-level defaults (solver units)
PULSE_PEAK = 50.0
PULSE_WIDTH = 1.0
PULSE_SEPARATION = 1.2

# Tolerances
NORMALIZE_TOLERANCE = 1e-12
GAUSSIAN_EDGE_DECAY = 1e-8
EDGE_DENSITY_LIMIT = 1e-6
PHASE_GUARD = 0.5
GROUND_STATE_TOLERANCE = 1e-10
GROUND_STATE_MAX_STEPS = 200_000
THREE_LEVEL_STEP_GUARD = 0.1
THREE_LEVEL_NORM_DRIFT = 1e-6

# Sweep settings
SWEEP_POINTS = 9

# Visualization settings
FIGURE_SIZE = (6, 5)
DPI = 150
COLORMAP = 'viridis'
