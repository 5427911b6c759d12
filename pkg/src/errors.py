"""Exception hierarchy for transfer simulations."""


class TransferError(Exception):
    """Base class for every error raised by the simulation library."""

    kind = "runtime"


class ConfigError(TransferError):
    kind = "config"


class GridError(TransferError):
    kind = "grid"


class EdgeDensityError(TransferError):
    """Wavefunction density reached the periodic boundary."""

    kind = "edge-density"


class StepGuardError(TransferError):
    """Time step too large for the potential or kinetic phase per step."""

    kind = "step-guard"


class ConvergenceError(TransferError):
    kind = "convergence"


class SingularityError(TransferError):
    """Field evaluated on top of a wire."""

    kind = "singularity"


class WellsMergedError(TransferError):
    kind = "wells-merged"


class PartitionError(TransferError):
    kind = "partition"


class DarkStateUndefinedError(TransferError):
    """Both couplings vanish, so the mixing angle has no direction."""

    kind = "dark-state-undefined"


class NormDriftError(TransferError):
    kind = "norm-drift"
