"""Orbit-wise storage of a Gamma-equivariant CW complex.

A complex stores, per dimension, a list of orbit representatives.  Each
representative carries generators of its (set-wise) stabilizer and its
boundary as ``(orbit, element, incidence)`` triples, meaning the face
``element * sigma_orbit`` one dimension down.

Concrete cells are pairs ``(orbit, g)`` standing for ``g * sigma_orbit``; the
element is normalised to the least key of the coset ``g * Stab(sigma_orbit)``.
Stabilizer elements may reverse the orientation of a cell.  The induced sign
character is recovered from the boundary, and canonicalisation returns it
alongside the representative.

Only a finite patch of the (usually infinite) complex is ever enumerated: the
closure under faces of the translates listed in each orbit's ``region``
(default: the representative itself).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import InputError, ResourceError
from .groups import FiniteGroupTable, GroupElement, GroupSpec, generate_closure

FORMAT = "gcw-1"
DEFAULT_CELL_BOUND = 10_000_000
_TOP_FIELDS = {"format", "group", "cells"}
_ORBIT_FIELDS = {"label", "stabilizer_gens", "boundary", "region"}
_FACE_FIELDS = {"orbit", "elt", "incidence", "dim"}


@dataclass(frozen=True)
class FaceRef:
    """The face ``elt * sigma_orbit`` with the given incidence number."""

    orbit: int
    elt: GroupElement
    incidence: int = 1


@dataclass(eq=True)
class OrbitCell:
    dim: int
    stabilizer_gens: tuple[GroupElement, ...]
    boundary: tuple[FaceRef, ...]
    label: str | None = None
    region: tuple[GroupElement, ...] | None = None
    _table: FiniteGroupTable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        self.stabilizer_gens = tuple(self.stabilizer_gens)
        self.boundary = tuple(self.boundary)
        if self.region is not None:
            self.region = tuple(self.region)

    def stabilizer(self, identity: GroupElement) -> FiniteGroupTable:
        if self._table is None:
            self._table = generate_closure(self.stabilizer_gens, identity=identity)
        return self._table

    def name(self, j: int) -> str:
        return self.label if self.label else f"cell({self.dim},{j})"


class ConcreteCell(NamedTuple):
    """The cell ``elt * sigma_orbit`` of dimension ``dim``; ``elt`` is canonical."""

    dim: int
    orbit: int
    elt: GroupElement


@dataclass(frozen=True)
class Offender:
    dim: int
    orbit: int
    label: str | None
    witness: GroupElement

    def __str__(self):
        name = self.label or f"cell({self.dim},{self.orbit})"
        return f"{name} [dim {self.dim}, orbit {self.orbit}] moved by {self.witness!r}"


@dataclass(frozen=True)
class RigidityReport:
    rigid: bool
    offenders: tuple[Offender, ...]


@dataclass(frozen=True)
class FaceMember:
    """A facet written as ``sign * element * rep`` for its orbit representative."""

    cell: ConcreteCell
    incidence: int
    element: GroupElement
    sign: int


@dataclass(frozen=True)
class FaceOrbit:
    rep: ConcreteCell
    members: tuple[FaceMember, ...]

    def __len__(self):
        return len(self.members)


class EquivariantComplex:
    """A finite-dimensional Gamma-CW complex with finite stabilizers.

    Instances are treated as immutable.  Derived data (stabilizer tables,
    orientation characters, canonical forms, the cell enumeration) is cached
    on first use; cache fills are idempotent so concurrent readers are safe.
    """

    def __init__(self, group: GroupSpec, cells: Sequence[Sequence[OrbitCell]]):
        self.group = group
        self.cells: list[list[OrbitCell]] = [list(orbits) for orbits in cells]
        while self.cells and not self.cells[-1]:
            self.cells.pop()
        self.identity = group.identity
        self._orientation: dict[tuple[int, int], dict[GroupElement, int]] = {}
        self._canon: dict[tuple[int, int, GroupElement], tuple[GroupElement, int]] = {}
        self._base: dict[tuple[int, int], tuple[tuple[ConcreteCell, int], ...]] = {}
        self._bdry: dict[ConcreteCell, tuple[tuple[ConcreteCell, int], ...]] = {}
        self._pw: dict[tuple[int, int], FiniteGroupTable] = {}
        self._enum: list[list[ConcreteCell]] | None = None

    # ---- basic shape -------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    def orbit(self, d: int, j: int) -> OrbitCell:
        return self.cells[d][j]

    def orbit_counts(self) -> list[int]:
        return [len(orbits) for orbits in self.cells]

    def cell_counts(self, bound: int = DEFAULT_CELL_BOUND) -> list[int]:
        return [len(cs) for cs in self.enumerate_cells(bound)]

    def __eq__(self, other):
        if not isinstance(other, EquivariantComplex):
            return NotImplemented
        return self.group == other.group and self.cells == other.cells

    def __repr__(self):
        return f"EquivariantComplex(group={self.group}, orbits={self.orbit_counts()})"

    # ---- stabilizers and orientation --------------------------------------

    def stabilizer(self, d: int, j: int) -> FiniteGroupTable:
        return self.cells[d][j].stabilizer(self.identity)

    def orientation(self, d: int, j: int) -> dict[GroupElement, int]:
        """Sign by which each stabilizer element acts on the cell's orientation."""
        key = (d, j)
        omega = self._orientation.get(key)
        if omega is not None:
            return omega
        G = self.stabilizer(d, j)
        base = dict(self.base_boundary(d, j))
        neg = {c: -a for c, a in base.items()}
        omega = {}
        for h in G.elements:
            if not base:
                omega[h] = 1
                continue
            image: dict[ConcreteCell, int] = {}
            for c, a in base.items():
                g2, s = self.canonical(c.dim, c.orbit, h * c.elt)
                cc = ConcreteCell(c.dim, c.orbit, g2)
                image[cc] = image.get(cc, 0) + a * s
            image = {c: a for c, a in image.items() if a}
            if image == base:
                omega[h] = 1
            elif image == neg:
                omega[h] = -1
            else:
                name = self.cells[d][j].name(j)
                raise InputError(f"stabilizer element {h!r} of {name} does not map its boundary onto itself")
        self._orientation[key] = omega
        return omega

    def canonical(self, d: int, j: int, g: GroupElement) -> tuple[GroupElement, int]:
        """Least-key representative of ``g * Stab`` and the sign with ``g*s = sign * rep*s``."""
        key = (d, j, g)
        hit = self._canon.get(key)
        if hit is not None:
            return hit
        G = self.stabilizer(d, j)
        best, best_h = None, None
        for h in G.elements:
            gh = g * h
            if best is None or gh.key < best.key:
                best, best_h = gh, h
        out = (best, self.orientation(d, j)[best_h])
        self._canon[key] = out
        return out

    def cell(self, d: int, j: int, g: GroupElement | None = None) -> ConcreteCell:
        g = self.identity if g is None else g
        return ConcreteCell(d, j, self.canonical(d, j, g)[0])

    def act(self, h: GroupElement, c: ConcreteCell) -> tuple[ConcreteCell, int]:
        """``h * c`` as a canonical cell and an orientation sign."""
        g2, s = self.canonical(c.dim, c.orbit, h * c.elt)
        return ConcreteCell(c.dim, c.orbit, g2), s

    # ---- boundaries ---------------------------------------------------------

    def base_boundary(self, d: int, j: int) -> tuple[tuple[ConcreteCell, int], ...]:
        """Boundary of ``sigma_j`` itself (identity translate) as a canonical chain."""
        key = (d, j)
        hit = self._base.get(key)
        if hit is not None:
            return hit
        chain: dict[ConcreteCell, int] = {}
        for fr in self.cells[d][j].boundary:
            g2, s = self.canonical(d - 1, fr.orbit, fr.elt)
            c = ConcreteCell(d - 1, fr.orbit, g2)
            chain[c] = chain.get(c, 0) + fr.incidence * s
        out = tuple(sorted((c, a) for c, a in chain.items() if a))
        self._base[key] = out
        return out

    def boundary(self, c: ConcreteCell) -> tuple[tuple[ConcreteCell, int], ...]:
        """Boundary chain of the concrete cell ``c``, sorted by cell."""
        hit = self._bdry.get(c)
        if hit is not None:
            return hit
        if c.dim == 0:
            out: tuple = ()
        else:
            chain: dict[ConcreteCell, int] = {}
            for f, a in self.base_boundary(c.dim, c.orbit):
                f2, s = self.act(c.elt, f)
                chain[f2] = chain.get(f2, 0) + a * s
            out = tuple(sorted((f, a) for f, a in chain.items() if a))
        self._bdry[c] = out
        return out

    def faces(self, c: ConcreteCell) -> list[ConcreteCell]:
        return [f for f, _ in self.boundary(c)]

    def closure(self, cells: Iterable[ConcreteCell]) -> set[ConcreteCell]:
        out = set()
        stack = list(cells)
        while stack:
            c = stack.pop()
            if c in out:
                continue
            out.add(c)
            stack.extend(self.faces(c))
        return out

    # ---- enumeration --------------------------------------------------------

    def seeds(self) -> list[ConcreteCell]:
        out = []
        for d, orbits in enumerate(self.cells):
            for j, oc in enumerate(orbits):
                region = (self.identity,) if oc.region is None else oc.region
                out.extend(self.cell(d, j, g) for g in region)
        return out

    def enumerate_cells(self, bound: int = DEFAULT_CELL_BOUND) -> list[list[ConcreteCell]]:
        """All concrete cells of the enumerated patch, per dimension, sorted."""
        if self._enum is not None:
            return self._enum
        seen: set[ConcreteCell] = set()
        stack = self.seeds()
        while stack:
            c = stack.pop()
            if c in seen:
                continue
            seen.add(c)
            if len(seen) > bound:
                raise ResourceError(f"cell enumeration exceeds {bound} cells")
            stack.extend(self.faces(c))
        out: list[list[ConcreteCell]] = [[] for _ in self.cells]
        for c in seen:
            out[c.dim].append(c)
        for cs in out:
            cs.sort()
        self._enum = out
        return out

    def vertices_of_closure(self, c: ConcreteCell) -> set[ConcreteCell]:
        return {v for v in self.closure([c]) if v.dim == 0}

    # ---- rigidity -----------------------------------------------------------

    def pointwise_stabilizer(self, d: int, j: int) -> FiniteGroupTable:
        """Stabilizer elements fixing every vertex of the cell's closure."""
        hit = self._pw.get((d, j))
        if hit is not None:
            return hit
        G = self.stabilizer(d, j)
        verts = sorted(self.vertices_of_closure(self.cell(d, j)))
        fixing = [h for h in G.elements if all(self.act(h, v)[0] == v for v in verts)]
        pw = G.subgroup(fixing)
        self._pw[(d, j)] = pw
        return pw

    def is_rigid_orbit(self, d: int, j: int) -> bool:
        return self.pointwise_stabilizer(d, j).order == self.stabilizer(d, j).order

    def rigidity(self) -> RigidityReport:
        offenders = []
        for d, orbits in enumerate(self.cells):
            for j, oc in enumerate(orbits):
                pw = self.pointwise_stabilizer(d, j)
                G = self.stabilizer(d, j)
                if pw.order != G.order:
                    witness = next(h for h in G.elements if h not in pw)
                    offenders.append(Offender(d, j, oc.label, witness))
        return RigidityReport(not offenders, tuple(offenders))

    def is_rigid(self) -> bool:
        return self.rigidity().rigid

    def orbits_of_faces(self, d: int, j: int) -> list[FaceOrbit]:
        """Facets of ``sigma_j`` sorted into orbits of its stabilizer.

        Orbits are ordered by their least cell; inside an orbit the members
        follow the first stabilizer element (in key order) reaching them.
        """
        facets = dict(self.base_boundary(d, j))
        G = self.stabilizer(d, j)
        assigned: set[ConcreteCell] = set()
        out = []
        for rep in sorted(facets):
            if rep in assigned:
                continue
            members: dict[ConcreteCell, FaceMember] = {}
            for h in G.elements:
                img, s = self.act(h, rep)
                if img not in facets:
                    raise InputError(
                        f"stabilizer of {self.cells[d][j].name(j)} maps facet {rep} outside its boundary")
                if img not in members:
                    members[img] = FaceMember(img, facets[img], h, s)
            assigned.update(members)
            out.append(FaceOrbit(rep, tuple(members.values())))
        return out

    # ---- invariants computed orbit-wise --------------------------------------

    def equivariant_euler_characteristic(self) -> Fraction:
        total = Fraction(0)
        for d, orbits in enumerate(self.cells):
            for j in range(len(orbits)):
                total += Fraction((-1) ** d, self.stabilizer(d, j).order)
        return total

    # ---- validation -----------------------------------------------------------

    def validate(self) -> "EquivariantComplex":
        """Check references, dimensions, finiteness and boundary invariance."""
        for d, orbits in enumerate(self.cells):
            for j, oc in enumerate(orbits):
                where = f"cells[{d}][{j}]"
                if oc.dim != d:
                    raise InputError(f"{where}: stored dimension {oc.dim} does not match position {d}")
                for g in oc.stabilizer_gens:
                    self.group.check(g)
                for k, fr in enumerate(oc.boundary):
                    if d == 0:
                        raise InputError(f"{where}.boundary: vertices must have empty boundary")
                    if not 0 <= fr.orbit < len(self.cells[d - 1]):
                        raise InputError(f"{where}.boundary[{k}].orbit: no {d - 1}-cell orbit {fr.orbit}")
                    self.group.check(fr.elt)
                try:
                    self.stabilizer(d, j)
                except ResourceError as exc:
                    raise ResourceError(f"{where}.stabilizer_gens: {exc}") from exc
        for d, orbits in enumerate(self.cells):
            for j in range(len(orbits)):
                self.orientation(d, j)
        return self

    # ---- editing helpers --------------------------------------------------------

    def with_cells(self, cells: Sequence[Sequence[OrbitCell]]) -> "EquivariantComplex":
        return EquivariantComplex(self.group, cells)

    def normalized(self) -> "EquivariantComplex":
        """Same complex with every boundary element canonical and duplicates merged."""
        new_cells = []
        for d, orbits in enumerate(self.cells):
            row = []
            for j, oc in enumerate(orbits):
                if d == 0:
                    row.append(oc)
                    continue
                entries = [FaceRef(c.orbit, c.elt, a) for c, a in self.base_boundary(d, j)]
                row.append(replace(oc, boundary=tuple(entries), _table=oc._table))
            new_cells.append(row)
        return EquivariantComplex(self.group, new_cells)


# ---- gcw-1 documents -----------------------------------------------------------

def _elt_json(g: GroupElement):
    return list(g.entries)


def to_dict(X: EquivariantComplex) -> dict:
    cells = []
    for orbits in X.cells:
        row = []
        for oc in orbits:
            entry: dict = {}
            if oc.label is not None:
                entry["label"] = oc.label
            entry["stabilizer_gens"] = [_elt_json(g) for g in oc.stabilizer_gens]
            entry["boundary"] = [
                {"orbit": fr.orbit, "elt": _elt_json(fr.elt), "incidence": fr.incidence} for fr in oc.boundary
            ]
            if oc.region is not None:
                entry["region"] = [_elt_json(g) for g in oc.region]
            row.append(entry)
        cells.append(row)
    return {"format": FORMAT, "group": X.group.to_json(), "cells": cells}


def dumps(X: EquivariantComplex) -> str:
    return json.dumps(to_dict(X), indent=1)


def save(X: EquivariantComplex, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(X))
        fh.write("\n")


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _elt(spec: GroupSpec, data, where):
    try:
        return spec.element(data)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from exc


def from_dict(doc) -> EquivariantComplex:
    if not isinstance(doc, dict):
        raise InputError("top level: expected an object")
    if doc.get("format") != FORMAT:
        raise InputError(f"format: expected {FORMAT!r}, got {doc.get('format')!r}")
    unknown = sorted(set(doc) - _TOP_FIELDS)
    if unknown:
        warnings.warn(f"ignoring unknown top-level fields: {', '.join(unknown)}", stacklevel=2)
    g = doc.get("group")
    if not isinstance(g, dict):
        raise InputError("group: expected an object")
    try:
        spec = GroupSpec(g.get("kind"), _int(g.get("degree"), "group.degree"), bool(g.get("projective", False)))
    except InputError as exc:
        raise InputError(f"group: {exc}") from exc
    raw = doc.get("cells")
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise InputError("cells: expected a list of per-dimension lists")
    cells = []
    for d, orbits in enumerate(raw):
        row = []
        for j, o in enumerate(orbits):
            where = f"cells[{d}][{j}]"
            if not isinstance(o, dict):
                raise InputError(f"{where}: expected an object")
            extra = sorted(set(o) - _ORBIT_FIELDS)
            if extra:
                raise InputError(f"{where}: unknown fields {', '.join(extra)}")
            gens = o.get("stabilizer_gens", [])
            if not isinstance(gens, list):
                raise InputError(f"{where}.stabilizer_gens: expected a list")
            gens = [_elt(spec, e, f"{where}.stabilizer_gens[{k}]") for k, e in enumerate(gens)]
            bd = o.get("boundary", [])
            if not isinstance(bd, list):
                raise InputError(f"{where}.boundary: expected a list")
            faces = []
            for k, fr in enumerate(bd):
                w = f"{where}.boundary[{k}]"
                if not isinstance(fr, dict) or not {"orbit", "elt"} <= set(fr):
                    raise InputError(f"{w}: expected an object with orbit and elt")
                extra = sorted(set(fr) - _FACE_FIELDS)
                if extra:
                    raise InputError(f"{w}: unknown fields {', '.join(extra)}")
                if "dim" in fr and _int(fr["dim"], f"{w}.dim") != d - 1:
                    raise InputError(f"{w}.dim: a {d}-cell can only have faces of dimension {d - 1}, "
                                     f"got {fr['dim']}")
                faces.append(FaceRef(_int(fr["orbit"], f"{w}.orbit"), _elt(spec, fr["elt"], f"{w}.elt"),
                                     _int(fr.get("incidence", 1), f"{w}.incidence")))
            region = o.get("region")
            if region is not None:
                if not isinstance(region, list):
                    raise InputError(f"{where}.region: expected a list")
                region = [_elt(spec, e, f"{where}.region[{k}]") for k, e in enumerate(region)]
            label = o.get("label")
            if label is not None and not isinstance(label, str):
                raise InputError(f"{where}.label: expected a string")
            row.append(OrbitCell(d, gens, faces, label, region))
        cells.append(row)
    return EquivariantComplex(spec, cells).validate()


def loads(text: str) -> EquivariantComplex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed document at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_dict(doc)


def load(path) -> EquivariantComplex:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return loads(text)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


# ---- free functions mirroring the methods ----------------------------------------

def enumerate_cells(X: EquivariantComplex, bound: int = DEFAULT_CELL_BOUND):
    return X.enumerate_cells(bound)


def vertices_of_closure(X: EquivariantComplex, c: ConcreteCell):
    return X.vertices_of_closure(c)


def pointwise_stabilizer(X: EquivariantComplex, d: int, j: int) -> FiniteGroupTable:
    return X.pointwise_stabilizer(d, j)


def is_rigid(X: EquivariantComplex) -> RigidityReport:
    return X.rigidity()


def orbits_of_faces(X: EquivariantComplex, d: int, j: int) -> list[FaceOrbit]:
    return X.orbits_of_faces(d, j)
