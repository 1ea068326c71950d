"""Exception hierarchy. Each class carries the CLI exit code it maps to."""

from __future__ import annotations


class GCWError(Exception):
    exit_code = 1


class InputError(GCWError, ValueError):
    """Malformed complex, element or argument."""

    exit_code = 2


class RigidityError(GCWError):
    """A computation that needs a rigid complex received a non-rigid one."""

    exit_code = 3

    def __init__(self, message, offenders=()):
        super().__init__(message)
        self.offenders = list(offenders)


class RFSHypothesisError(GCWError):
    """No facet fundamental domain passed the rigid-facets checks."""

    exit_code = 4

    def __init__(self, message, dim=None, orbit=None):
        super().__init__(message)
        self.dim = dim
        self.orbit = orbit


class ResourceError(GCWError):
    """A configured size bound was exceeded."""

    exit_code = 5


class ArithmeticConsistencyError(GCWError, ArithmeticError):
    """Exact arithmetic produced something impossible (non-integral multiplicity...)."""


class RFSFallbackWarning(UserWarning):
    """Emitted when a cell was subdivided with VSS because RFS checks failed."""


class SubdivisionError(GCWError):
    """A cell cannot be subdivided: irregular boundary or facet orbits of the wrong size."""

    exit_code = 3
