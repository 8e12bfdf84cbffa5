"""Dense complex linear algebra: Pfaffians, principal logarithms, root branches."""

from lib.linalg.branches import BranchTrackedScalar, principal_log, tracked_root
from lib.linalg.factorizations import takagi, youla, youla_block
from lib.linalg.pfaffian import pfaffian, pfaffian_expansion

__all__ = [
    "BranchTrackedScalar",
    "pfaffian",
    "pfaffian_expansion",
    "principal_log",
    "takagi",
    "tracked_root",
    "youla",
    "youla_block",
]
