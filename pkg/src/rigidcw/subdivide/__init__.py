"""Rigidification by rigid facets, virtually simplicial, hybrid and barycentric subdivision."""

from .checks import Subcomplex, contractible_check, sphere_boundary_check
from .engine import (
    CellPartition,
    NewCell,
    SubdivisionMethod,
    choose_fundamental_domain,
    cone_envelope,
    hybrid,
    rfs_cell,
    rigidify,
    vss_cell,
)

__all__ = [
    "CellPartition",
    "NewCell",
    "Subcomplex",
    "SubdivisionMethod",
    "choose_fundamental_domain",
    "cone_envelope",
    "contractible_check",
    "hybrid",
    "rfs_cell",
    "rigidify",
    "sphere_boundary_check",
    "vss_cell",
]
