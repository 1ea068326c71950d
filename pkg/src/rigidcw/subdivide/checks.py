"""Conservative topological tests used while building a facet fundamental domain.

All tests may answer ``False`` for spaces that do have the property (the
caller then tries another candidate) but never answer ``True`` wrongly:
contractibility is witnessed by a free-face collapse to a point.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence

from ..homalg import chain_complex_of_cells, homology

Cell = Hashable


class Subcomplex:
    """A finite face-closed set of cells with their boundary chains.

    ``boundary[c]`` lists ``(face, coefficient)`` pairs.  Cells need a ``dim``
    attribute unless ``dims`` is given.
    """

    def __init__(self, boundary: Mapping[Cell, Sequence[tuple[Cell, int]]],
                 dims: Mapping[Cell, int] | None = None):
        self.boundary = {c: tuple(b) for c, b in boundary.items()}
        self.dims = dict(dims) if dims is not None else {c: c.dim for c in self.boundary}
        for c, bd in self.boundary.items():
            for f, _ in bd:
                if f not in self.boundary:
                    raise ValueError(f"subcomplex is not closed: face {f!r} of {c!r} missing")

    @classmethod
    def closure(cls, X, cells: Iterable) -> "Subcomplex":
        """Face closure of concrete cells of an ``EquivariantComplex``."""
        return cls({c: X.boundary(c) for c in X.closure(cells)})

    def __len__(self):
        return len(self.boundary)

    @property
    def dimension(self) -> int:
        return max(self.dims.values(), default=-1)

    def cells_by_dim(self) -> list[list[Cell]]:
        out: list[list[Cell]] = [[] for _ in range(self.dimension + 1)]
        for c, d in self.dims.items():
            out[d].append(c)
        for cs in out:
            cs.sort(key=repr)
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** d for d in self.dims.values())

    def reduced_euler(self) -> int:
        return self.euler_characteristic() - 1

    def homology(self):
        cells = self.cells_by_dim()
        return homology(chain_complex_of_cells(cells, lambda c: self.boundary[c]))

    def reduced_homology_vanishes(self) -> bool:
        if not self.boundary:
            return False
        hs = self.homology()
        return hs[0].betti == 1 and not hs[0].torsion and all(h.is_zero for h in hs[1:])

    def is_connected(self) -> bool:
        verts = [c for c, d in self.dims.items() if d == 0]
        if not verts:
            return False
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for c, d in self.dims.items():
            if d == 1:
                ends = [f for f, _ in self.boundary[c]]
                for f in ends[1:]:
                    parent[find(f)] = find(ends[0])
        return len({find(v) for v in verts}) == 1

    def maximal_cells(self) -> list[Cell]:
        faces = {f for bd in self.boundary.values() for f, _ in bd}
        return sorted((c for c in self.boundary if c not in faces), key=repr)

    def without(self, cell: Cell) -> "Subcomplex":
        """Remove a maximal cell."""
        rest = {c: b for c, b in self.boundary.items() if c != cell}
        return Subcomplex(rest, {c: self.dims[c] for c in rest})

    def collapses_to_point(self) -> bool:
        """Greedy elementary collapses; true if a single vertex remains."""
        cofaces: dict[Cell, set[Cell]] = {c: set() for c in self.boundary}
        coef: dict[tuple[Cell, Cell], int] = {}
        for c, bd in self.boundary.items():
            for f, a in bd:
                cofaces[f].add(c)
                coef[(f, c)] = coef.get((f, c), 0) + a
        alive = set(self.boundary)
        work = sorted(alive, key=repr)
        while work:
            f = work.pop()
            if f not in alive or len(cofaces[f]) != 1:
                continue
            (c,) = cofaces[f]
            if cofaces[c] or abs(coef[(f, c)]) != 1:
                continue
            for g in (f, c):
                alive.discard(g)
                for h, _ in self.boundary[g]:
                    if h in alive:
                        cofaces[h].discard(g)
                        work.append(h)
        return len(alive) == 1 and self.dims[next(iter(alive))] == 0


def contractible_check(K: Subcomplex) -> bool:
    """Reduced homology vanishes and the complex collapses to a point."""
    return K.reduced_homology_vanishes() and K.collapses_to_point()


def sphere_boundary_check(S: Subcomplex, m: int, final: bool = False) -> bool:
    """Naive test that ``S`` could bound an (m-1)-ball: an (m-2)-sphere surrogate.

    Requires Euler characteristic ``1 + (-1)^(m-2)`` and, from dimension one
    on, connectivity.  With ``final`` set, ``S`` minus its first top cell must
    also collapse to a point (the simple-connectivity surrogate).
    """
    k = m - 2
    if S.euler_characteristic() != 1 + (-1) ** k:
        return False
    if k >= 1 and not S.is_connected():
        return False
    if final and len(S):
        tops = [c for c in S.maximal_cells() if S.dims[c] == S.dimension]
        if not S.without(tops[0]).collapses_to_point():
            return False
    return True
