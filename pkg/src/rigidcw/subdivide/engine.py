"""Subdivision of non-rigid cells, one dimension at a time.

Every new cell is a formal cone to the barycenter of the cell being
subdivided.  With the orientation convention ``d cone(r) = r - cone(d r)``
(and ``d cone(v) = v - apex`` for a vertex) a cell equals, as a chain, the
sum of the cones over its facets weighted by their incidences.  Rigid facets
subdivision merges one facet per stabilizer orbit into a single cell; the
virtually simplicial variant keeps one cone per facet orbit.
"""

from __future__ import annotations

import warnings
from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import partial

from ..complex import ConcreteCell, EquivariantComplex, FaceRef, OrbitCell
from ..errors import InputError, RFSFallbackWarning, RFSHypothesisError, SubdivisionError
from ..groups import FiniteGroupTable, GroupElement, left_cosets
from .checks import Subcomplex, contractible_check, sphere_boundary_check


class SubdivisionMethod(str, Enum):
    RFS = "rfs"
    VSS = "vss"
    HYBRID = "hybrid"
    BARYCENTRIC = "barycentric"

    @classmethod
    def parse(cls, value) -> "SubdivisionMethod":
        if isinstance(value, cls):
            return value
        text = str(value).lower()
        text = {"bcs": "barycentric", "hys": "hybrid"}.get(text, text)
        try:
            return cls(text)
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise InputError(f"unknown subdivision method {value!r} (expected one of {names})") from None


# A reference inside a partition: ("old", orbit) for an existing cell one
# dimension down, ("new", local_id) for a cell created by the same partition.
Ref = tuple[str, int]


@dataclass
class NewCell:
    dim: int
    stabilizer: FiniteGroupTable
    boundary: list[tuple[Ref, GroupElement, int]]
    label: str
    region: tuple[GroupElement, ...] = ()


@dataclass
class CellPartition:
    """The pieces replacing one orbit cell ``(dim, orbit)``.

    ``top`` lists the local ids of the new cells of the same dimension (the
    fundamental domain); ``replacement`` writes the old cell as a chain of
    translates ``(local_id, element, coefficient)`` of those.
    """

    dim: int
    orbit: int
    method: str
    new_cells: list[NewCell] = field(default_factory=list)
    top: list[int] = field(default_factory=list)
    replacement: list[tuple[int, GroupElement, int]] = field(default_factory=list)
    fallback: str | None = None

    @property
    def fundamental_domain(self) -> list[NewCell]:
        return [self.new_cells[i] for i in self.top]

    @property
    def size(self) -> int:
        """Number of top cells the old cell is tessellated into."""
        return len(self.replacement)


class _ConeBuilder:
    """Creates the barycenter of one cell and cones over its proper faces.

    Cones over faces in one stabilizer orbit share a single new orbit cell;
    its representative is the cone over the least face of the orbit.
    """

    APEX = 0

    def __init__(self, X: EquivariantComplex, dim: int, orbit: int):
        self.X = X
        self.G = X.stabilizer(dim, orbit)
        self.name = X.orbit(dim, orbit).name(orbit)
        self.cells: list[NewCell] = [NewCell(0, self.G, [], f"bary({self.name})")]
        self._where: dict[ConcreteCell, tuple[ConcreteCell, GroupElement, int]] = {}
        self._cone_id: dict[ConcreteCell, int] = {}

    def locate(self, c: ConcreteCell) -> tuple[ConcreteCell, GroupElement, int]:
        """``(rep, x, s)`` with ``c = s * x * rep`` and ``rep`` least in the orbit of ``c``."""
        hit = self._where.get(c)
        if hit is not None:
            return hit
        X, G = self.X, self.G
        rep = min(X.act(h, c)[0] for h in G.elements)
        for h in G.elements:
            img, s = X.act(h, rep)
            self._where.setdefault(img, (rep, h, s))
        return self._where[c]

    def cone(self, c: ConcreteCell) -> tuple[int, GroupElement, int]:
        """``cone(c) = s * x * cone(rep)`` as ``(local id of cone(rep), x, s)``."""
        rep, x, s = self.locate(c)
        cid = self._cone_id.get(rep)
        if cid is None:
            cid = self._make_cone(rep)
        return cid, x, s

    def _make_cone(self, rep: ConcreteCell) -> int:
        X, G = self.X, self.G
        stab = G.subgroup(h for h in G.elements if X.act(h, rep)[0] == rep)
        bd: list[tuple[Ref, GroupElement, int]] = [(("old", rep.orbit), rep.elt, 1)]
        bd += self.minus_cone_of_boundary([(rep, 1)])
        face_name = X.orbit(rep.dim, rep.orbit).name(rep.orbit)
        self.cells.append(NewCell(rep.dim + 1, stab, bd, f"cone({face_name})"))
        cid = len(self.cells) - 1
        self._cone_id[rep] = cid
        return cid

    def minus_cone_of_boundary(self, chain) -> list[tuple[Ref, GroupElement, int]]:
        """Entries of ``-cone(d chain)`` where ``chain`` is a list of ``(cell, coefficient)``."""
        X = self.X
        apex = 0
        ridges: dict[ConcreteCell, int] = {}
        for c, a in chain:
            if c.dim == 0:
                apex += a
                continue
            for f, b in X.boundary(c):
                ridges[f] = ridges.get(f, 0) + a * b
        out: list[tuple[Ref, GroupElement, int]] = []
        if apex:
            out.append((("new", self.APEX), X.identity, -apex))
        for f in sorted(ridges):
            k = ridges[f]
            if k:
                cid, x, s = self.cone(f)
                out.append((("new", cid), x, -k * s))
        return out


def _regular_facets(X: EquivariantComplex, m: int, k: int) -> dict[ConcreteCell, int]:
    facets = dict(X.base_boundary(m, k))
    bad = [c for c, a in facets.items() if abs(a) != 1]
    if bad or len(X.orbit(m, k).boundary) != len(facets):
        raise SubdivisionError(
            f"{X.orbit(m, k).name(k)}: subdividing needs distinct facets with unit incidences")
    return facets


def _region(X: EquivariantComplex, m: int, k: int, elements) -> tuple[GroupElement, ...]:
    region = X.orbit(m, k).region
    seeds = (X.identity,) if region is None else region
    return tuple(g * x for g in seeds for x in elements)


def vss_cell(X: EquivariantComplex, m: int, k: int) -> CellPartition:
    """Cone every facet of ``sigma`` to its barycenter; one new orbit per facet orbit."""
    facets = _regular_facets(X, m, k)
    builder = _ConeBuilder(X, m, k)
    part = CellPartition(m, k, "vss")
    reached: dict[int, list[GroupElement]] = {}
    for f in sorted(facets):
        cid, x, s = builder.cone(f)
        part.replacement.append((cid, x, facets[f] * s))
        reached.setdefault(cid, []).append(x)
    part.new_cells = builder.cells
    part.top = sorted(reached)
    for j, cid in enumerate(part.top):
        cell = part.new_cells[cid]
        cell.label = f"{builder.name}/F{j}"
        cell.region = _region(X, m, k, reached[cid])
    return part


def rfs_cell(X: EquivariantComplex, m: int, k: int) -> CellPartition:
    """Rigid facets subdivision of one non-rigid orbit cell.

    Raises ``RFSHypothesisError`` when no facet fundamental domain passes the
    checks; the caller decides whether to fall back to ``vss_cell``.
    """
    G = X.stabilizer(m, k)
    P = X.pointwise_stabilizer(m, k)
    if G.order == P.order:
        return CellPartition(m, k, "identity")
    facets = _regular_facets(X, m, k)
    orbits = X.orbits_of_faces(m, k)
    index = G.order // P.order
    for o in orbits:
        if len(o) != index:
            raise SubdivisionError(
                f"{X.orbit(m, k).name(k)}: facet orbit of {o.rep} has size {len(o)}, expected {index}")
    T = choose_fundamental_domain(X, m, k, orbits)
    builder = _ConeBuilder(X, m, k)
    chain = [(c, facets[c]) for c in T]
    bd: list[tuple[Ref, GroupElement, int]] = [(("old", c.orbit), c.elt, a) for c, a in chain]
    bd += builder.minus_cone_of_boundary(chain)
    stab = _setwise_stabilizer(X, G, T)
    if stab.order != P.order:
        raise SubdivisionError(f"{X.orbit(m, k).name(k)}: fundamental domain has stabilizer "
                               f"of order {stab.order}, expected {P.order}")
    reps = left_cosets(G, P).representatives
    omega = X.orientation(m, k)
    F = NewCell(m, stab, bd, f"{builder.name}/F", _region(X, m, k, reps))
    part = CellPartition(m, k, "rfs", builder.cells + [F])
    fid = len(part.new_cells) - 1
    part.top = [fid]
    part.replacement = [(fid, g, omega[g]) for g in reps]
    return part


def cone_envelope(X: EquivariantComplex, m: int, k: int, T) -> CellPartition:
    """Merged cone over the facets ``T`` of ``sigma``, without the tessellation.

    ``T`` must be connected through shared ridges.
    """
    facets = dict(X.base_boundary(m, k))
    T = list(T)
    if not T or any(c not in facets for c in T):
        raise InputError("cone envelope needs a nonempty set of facets of the cell")
    if not _ridge_connected(X, T):
        raise InputError("facets of a cone envelope must be connected through shared ridges")
    builder = _ConeBuilder(X, m, k)
    chain = [(c, facets[c]) for c in T]
    bd = [(("old", c.orbit), c.elt, a) for c, a in chain] + builder.minus_cone_of_boundary(chain)
    G = X.stabilizer(m, k)
    stab = _setwise_stabilizer(X, G, T)
    F = NewCell(m, stab, bd, f"{builder.name}/F")
    part = CellPartition(m, k, "envelope", builder.cells + [F])
    part.top = [len(part.new_cells) - 1]
    return part


def _setwise_stabilizer(X, G, T):
    cells = set(T)
    return G.subgroup(h for h in G.elements if {X.act(h, c)[0] for c in T} == cells)


def _ridge_connected(X, T) -> bool:
    if len(T) <= 1 or T[0].dim == 0:
        return len(T) <= 1
    ridges = [set(X.faces(c)) for c in T]
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j in range(len(T)):
            if j not in seen and ridges[i] & ridges[j]:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(T)


def _candidate_ok(X, m, T, tau, final) -> bool:
    cells = T + [tau]
    if T and m >= 2:
        mine = set(X.faces(tau))
        if not any(mine & set(X.faces(c)) for c in T):
            return False
    K = Subcomplex.closure(X, cells)
    if K.reduced_euler() != 0 or not contractible_check(K):
        return False
    counts = Counter(f for c in cells for f in X.faces(c))
    S = [f for f, n in counts.items() if n == 1]
    return sphere_boundary_check(Subcomplex.closure(X, S), m, final=final)


def choose_fundamental_domain(X: EquivariantComplex, m: int, k: int, orbits=None) -> list[ConcreteCell]:
    """One facet per stabilizer orbit, accumulated while the union stays a ball.

    Orbits are visited in order; an orbit none of whose members fits is
    re-queued, and a full round without progress is a hypothesis failure.
    """
    orbits = X.orbits_of_faces(m, k) if orbits is None else orbits
    queue = deque(range(len(orbits)))
    T: list[ConcreteCell] = []
    stale = 0
    while queue:
        oi = queue.popleft()
        final = not queue
        chosen = next((mem.cell for mem in sorted(orbits[oi].members, key=lambda mm: mm.cell)
                       if _candidate_ok(X, m, T, mem.cell, final)), None)
        if chosen is not None:
            T.append(chosen)
            stale = 0
            continue
        queue.append(oi)
        stale += 1
        if stale >= len(queue):
            raise RFSHypothesisError(
                f"rigid facets subdivision failed for {X.orbit(m, k).name(k)} (dim {m}, orbit {k}): "
                f"no facet of orbit {orbits[oi].rep} extends the fundamental domain",
                dim=m, orbit=k)
    return T


# ---- the outer pass ----------------------------------------------------------

def _merge(X: EquivariantComplex, m: int, parts: list[CellPartition]) -> EquivariantComplex:
    parts = [p for p in parts if p.method != "identity"]
    if not parts:
        return X
    cells: list[list] = [list(row) for row in X.cells]
    where: dict[tuple[int, int], tuple[int, int]] = {}
    for pi, p in enumerate(parts):
        for li, nc in enumerate(p.new_cells):
            if nc.dim < m:
                where[(pi, li)] = (nc.dim, len(cells[nc.dim]))
                cells[nc.dim].append(None)
    by_orbit = {p.orbit: pi for pi, p in enumerate(parts)}
    row: list = []
    remap: dict[int, int] = {}
    for j, oc in enumerate(X.cells[m]):
        if j in by_orbit:
            pi = by_orbit[j]
            for li in parts[pi].top:
                where[(pi, li)] = (m, len(row))
                row.append(None)
        else:
            remap[j] = len(row)
            row.append(oc)
    cells[m] = row
    for pi, p in enumerate(parts):
        for li, nc in enumerate(p.new_cells):
            d, gi = where[(pi, li)]
            bd = tuple(FaceRef(o if kind == "old" else where[(pi, o)][1], g, a) for (kind, o), g, a in nc.boundary)
            cells[d][gi] = OrbitCell(d, tuple(nc.stabilizer.generators()), bd, nc.label, nc.region,
                                     _table=nc.stabilizer)
    if m + 1 < len(cells):
        upper = []
        for oc in cells[m + 1]:
            bd = []
            for fr in oc.boundary:
                pi = by_orbit.get(fr.orbit)
                if pi is None:
                    bd.append(FaceRef(remap[fr.orbit], fr.elt, fr.incidence))
                    continue
                for li, x, a in parts[pi].replacement:
                    bd.append(FaceRef(where[(pi, li)][1], fr.elt * x, fr.incidence * a))
            upper.append(OrbitCell(oc.dim, oc.stabilizer_gens, tuple(bd), oc.label, oc.region, _table=oc._table))
        cells[m + 1] = upper
    return EquivariantComplex(X.group, cells)


def _subdivide_one(X, m, k, method: SubdivisionMethod, fallback: bool) -> CellPartition:
    if method is SubdivisionMethod.BARYCENTRIC:
        return vss_cell(X, m, k)
    if method is SubdivisionMethod.VSS or (method is SubdivisionMethod.HYBRID and m == X.dimension):
        return vss_cell(X, m, k)
    try:
        return rfs_cell(X, m, k)
    except RFSHypothesisError as exc:
        if not fallback:
            raise
        part = vss_cell(X, m, k)
        part.fallback = str(exc)
        return part


def rigidify(X: EquivariantComplex, method="rfs", *, fallback: bool = True, jobs: int = 1,
             through: int | None = None) -> EquivariantComplex:
    """Subdivide until every stabilizer fixes its cell pointwise.

    Dimensions are processed upwards.  In each pass the selected orbit cells
    (the non-rigid ones, or all of them for the barycentric method) are
    subdivided independently, possibly on ``jobs`` threads, and merged in
    orbit order, so the output does not depend on ``jobs``.  A cell where the
    rigid facets checks fail is subdivided virtually simplicially instead
    (with an ``RFSFallbackWarning``) unless ``fallback`` is false.
    ``through`` stops after that dimension, leaving higher cells untouched.
    """
    method = SubdivisionMethod.parse(method)
    top = X.dimension if through is None else min(through, X.dimension)
    for m in range(1, top + 1):
        if method is SubdivisionMethod.BARYCENTRIC:
            targets = list(range(len(X.cells[m])))
        else:
            targets = [k for k in range(len(X.cells[m])) if not X.is_rigid_orbit(m, k)]
        if not targets:
            continue
        if jobs > 1 and len(targets) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(partial(_subdivide_one, X, m, method=method, fallback=fallback), targets))
        else:
            parts = [_subdivide_one(X, m, k, method, fallback) for k in targets]
        for p in parts:
            if p.fallback:
                warnings.warn(f"{p.fallback}; used virtually simplicial subdivision instead",
                              RFSFallbackWarning, stacklevel=2)
        X = _merge(X, m, parts)
    return X.normalized()


def hybrid(X: EquivariantComplex, **kwargs) -> EquivariantComplex:
    return rigidify(X, SubdivisionMethod.HYBRID, **kwargs)
