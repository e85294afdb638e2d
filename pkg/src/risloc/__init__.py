"""Near-field localization of RIS-assisted users with decoupled MUSIC."""

from .geometry import RisGeometry, UeTruth
from .grids import GridSpec, SearchGrids
from .simulator import Scenario, SnapshotBatch, generate_snapshots
from .subspace import eig_split, ls_recover, sample_covariance

__version__ = "0.1.0"

__all__ = [
    "GridSpec", "RisGeometry", "Scenario", "SearchGrids", "SnapshotBatch", "UeTruth",
    "eig_split", "generate_snapshots", "ls_recover", "sample_covariance",
]
