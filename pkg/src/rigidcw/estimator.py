"""scikit-learn style wrappers.

``Rigidifier`` is a stateless transformer mapping complexes to their
rigidifications; ``BredonHomology`` fits the Bredon homology of one complex.
Both accept an ``EquivariantComplex``, a gcw-1 document (dict), or a path.
"""

from __future__ import annotations

import os
from typing import Sequence

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import complex as cx
from .bredon import bredon_chain_complex
from .errors import InputError
from .homalg import homology
from .subdivide import SubdivisionMethod, rigidify


def check_complex(X) -> cx.EquivariantComplex:
    """Coerce ``X`` to a validated ``EquivariantComplex``."""
    if isinstance(X, cx.EquivariantComplex):
        return X
    if isinstance(X, dict):
        return cx.from_dict(X)
    if isinstance(X, (str, os.PathLike)):
        return cx.load(X)
    raise InputError(f"expected an EquivariantComplex, gcw-1 document or path, got {type(X).__name__}")


def _batch(X) -> tuple[list, bool]:
    if isinstance(X, (list, tuple)):
        return [check_complex(x) for x in X], True
    return [check_complex(X)], False


class Rigidifier(TransformerMixin, BaseEstimator):
    """Rigidify complexes with one of the four subdivision methods.

    Parameters
    ----------
    method : {"rfs", "vss", "hybrid", "barycentric"}
    fallback : bool
        Use virtually simplicial subdivision for cells where rigid facets fails.
    n_jobs : int
        Threads per dimension pass; the output does not depend on it.
    """

    def __init__(self, method: str = "rfs", fallback: bool = True, n_jobs: int = 1):
        self.method = method
        self.fallback = fallback
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        SubdivisionMethod.parse(self.method)
        if not isinstance(self.n_jobs, int) or self.n_jobs < 1:
            raise InputError(f"n_jobs must be a positive integer, got {self.n_jobs!r}")
        complexes, _ = _batch(X)
        self.n_complexes_ = len(complexes)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_complexes_")
        complexes, many = _batch(X)
        out = [rigidify(c, self.method, fallback=self.fallback, jobs=self.n_jobs) for c in complexes]
        return out if many else out[0]


class BredonHomology(BaseEstimator):
    """Fit computes ``homology_`` (list of ``HomologyGroup``) and ``ranks_`` of the Bredon complex."""

    def __init__(self, rigidify_first: str | None = None):
        self.rigidify_first = rigidify_first

    def fit(self, X, y=None):
        complex_ = check_complex(X)
        if self.rigidify_first:
            complex_ = rigidify(complex_, self.rigidify_first)
        chain = bredon_chain_complex(complex_).chain
        self.ranks_ = list(chain.sizes)
        self.homology_ = homology(chain)
        return self

    def betti_numbers(self) -> Sequence[int]:
        check_is_fitted(self, "homology_")
        return [h.betti for h in self.homology_]
