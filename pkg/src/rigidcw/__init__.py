"""Rigidification of equivariant CW complexes and Bredon homology.

The estimator wrappers (``Rigidifier``, ``BredonHomology``, ``check_complex``)
are imported lazily so that plain library and CLI use does not load
scikit-learn.
"""

from .bredon import bredon_chain_complex, bredon_homology, stabilizer_census, torsion_subcomplex
from .complex import ConcreteCell, EquivariantComplex, FaceRef, OrbitCell, load, loads, save
from .errors import (
    GCWError,
    InputError,
    ResourceError,
    RFSFallbackWarning,
    RFSHypothesisError,
    RigidityError,
    SubdivisionError,
)
from .fixtures import make_cube, make_modular_tree, make_polygon, make_simplex, make_square
from .homalg import (
    chain_complex_of_space,
    equivariant_euler_characteristic,
    euler_characteristic,
    homology,
    smith_normal_form,
    space_homology,
)
from .subdivide import SubdivisionMethod, hybrid, rigidify

_LAZY = {"Rigidifier", "BredonHomology", "check_complex"}


def __getattr__(name):
    if name in _LAZY:
        from . import estimator

        return getattr(estimator, name)
    raise AttributeError(f"module 'rigidcw' has no attribute {name!r}")


__all__ = [
    "BredonHomology",
    "ConcreteCell",
    "EquivariantComplex",
    "FaceRef",
    "GCWError",
    "InputError",
    "OrbitCell",
    "RFSFallbackWarning",
    "RFSHypothesisError",
    "ResourceError",
    "RigidityError",
    "Rigidifier",
    "SubdivisionError",
    "SubdivisionMethod",
    "bredon_chain_complex",
    "bredon_homology",
    "chain_complex_of_space",
    "check_complex",
    "equivariant_euler_characteristic",
    "euler_characteristic",
    "homology",
    "hybrid",
    "load",
    "loads",
    "make_cube",
    "make_modular_tree",
    "make_polygon",
    "make_simplex",
    "make_square",
    "rigidify",
    "save",
    "smith_normal_form",
    "space_homology",
    "stabilizer_census",
    "torsion_subcomplex",
]
