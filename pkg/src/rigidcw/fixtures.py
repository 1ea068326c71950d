"""Built-in example complexes.

Polyhedral fixtures are described concretely, cell by cell, as vertex sets
with oriented boundaries, together with generators of a group permuting the
vertices.  ``from_vertex_cells`` turns such a description into orbit form.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Mapping, Sequence

from .complex import EquivariantComplex, FaceRef, OrbitCell
from .errors import InputError
from .groups import MATRIX, PERMUTATION, GroupElement, GroupSpec, generate_closure

Cell = frozenset
Chain = Mapping[frozenset, int]


def from_vertex_cells(n_vertices: int, cells: Sequence[Mapping[frozenset, Chain]],
                      generators: Sequence[Sequence[int]],
                      label: Callable[[int, frozenset], str | None] | None = None) -> EquivariantComplex:
    """Orbit form of a finite complex whose cells are determined by their vertex sets.

    ``cells[d]`` maps each d-cell to its boundary chain.  ``generators`` are
    vertex permutations that must map cells to cells.  Orbits whose members
    are not faces of anything are seeded with all of their translates.
    """
    spec = GroupSpec(PERMUTATION, n_vertices)
    gens = [GroupElement.permutation(p) for p in generators]
    G = generate_closure(gens, identity=spec.identity)

    def act(g, c):
        return frozenset(g.entries[v] for v in c)

    signs: dict[tuple, int] = {}

    def sign(g, c, d):
        if d == 0:
            return 1
        key = (g, c)
        if key not in signs:
            target = act(g, c)
            if target not in cells[d]:
                raise InputError(f"generator image {sorted(target)} is not a {d}-cell")
            image = {act(g, f): a * sign(g, f, d - 1) for f, a in cells[d][c].items()}
            ref = dict(cells[d][target])
            if image == ref:
                signs[key] = 1
            elif image == {f: -a for f, a in ref.items()}:
                signs[key] = -1
            else:
                raise InputError(f"group does not respect the boundary of cell {sorted(c)}")
        return signs[key]

    locate: dict[frozenset, tuple[int, GroupElement]] = {}
    reps: list[list[frozenset]] = []
    for d, layer in enumerate(cells):
        reps.append([])
        for c in sorted(layer, key=lambda s: sorted(s)):
            if c in locate:
                continue
            j = len(reps[d])
            reps[d].append(c)
            for g in G.elements:  # key order, so the least element reaching a cell is kept
                img = act(g, c)
                if img not in layer:
                    raise InputError(f"generator image {sorted(img)} is not a {d}-cell")
                locate.setdefault(img, (j, g))
                sign(g, c, d)

    faces_of_something = {f for layer in cells for chain in layer.values() for f in chain}
    out = []
    for d, layer in enumerate(reps):
        row = []
        for j, c in enumerate(layer):
            stab = G.subgroup(g for g in G.elements if act(g, c) == c)
            boundary = []
            for f, a in sorted(cells[d][c].items(), key=lambda fa: sorted(fa[0])):
                o, g = locate[f]
                # g * rep_o = s * f, hence f = s * g * rep_o
                boundary.append(FaceRef(o, g, a * sign(g, reps[d - 1][o], d - 1)))
            region = sorted(g for m, (o, g) in locate.items()
                            if o == j and m in cells[d] and m not in faces_of_something)
            if region in ([], [spec.identity]):
                region = None
            name = label(d, c) if label else None
            row.append(OrbitCell(d, tuple(stab.generators()), tuple(boundary), name, region))
        out.append(row)
    return EquivariantComplex(spec, out).validate()


def _simplex_cells(n: int) -> list[dict]:
    cells = []
    for d in range(n + 1):
        layer = {}
        for vs in combinations(range(n + 1), d + 1):
            chain = {} if d == 0 else {frozenset(vs[:i] + vs[i + 1:]): (-1) ** i for i in range(d + 1)}
            layer[frozenset(vs)] = chain
        cells.append(layer)
    return cells


def make_simplex(n: int) -> EquivariantComplex:
    """A single n-simplex with the symmetric group permuting its vertices."""
    if n < 1:
        raise InputError("simplex dimension must be at least 1")
    gens = [[1, 0] + list(range(2, n + 1))]
    if n > 1:
        gens.append(list(range(1, n + 1)) + [0])
    return from_vertex_cells(n + 1, _simplex_cells(n), gens,
                             lambda d, c: f"{d}-face" if d < n else "simplex")


def make_square() -> EquivariantComplex:
    """A full square mirrored across its vertical axis.

    Corners are 0 top-left, 1 top-right, 2 bottom-right, 3 bottom-left.
    """
    V = [{frozenset([v]): {} for v in range(4)}]
    edges = {(0, 1): "top edge", (1, 2): "side edges", (2, 3): "bottom edge", (0, 3): "side edges"}
    E = {frozenset(e): {frozenset([e[1]]): 1, frozenset([e[0]]): -1} for e in edges}
    T, R, B, L = (frozenset(e) for e in edges)
    Q = {frozenset(range(4)): {T: 1, R: 1, B: 1, L: -1}}
    names = {frozenset(e): n for e, n in edges.items()}
    names.update({frozenset([0]): "top corners", frozenset([2]): "bottom corners", frozenset(range(4)): "square"})
    return from_vertex_cells(4, [V[0], E, Q], [[1, 0, 3, 2]], lambda d, c: names.get(c))


def make_polygon(n: int) -> EquivariantComplex:
    """The boundary circle of a regular n-gon with the dihedral group acting."""
    if n < 3:
        raise InputError("polygon needs at least 3 sides")
    V = {frozenset([v]): {} for v in range(n)}
    E = {}
    for i in range(n):
        a, b = sorted((i, (i + 1) % n))
        E[frozenset([a, b])] = {frozenset([b]): 1, frozenset([a]): -1}
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return from_vertex_cells(n, [V, E], [rot, ref], lambda d, c: "corner" if d == 0 else "side")


def make_cube(n: int, symmetry: str = "full") -> EquivariantComplex:
    """The n-cube with either its full symmetry group or a single mirror.

    Vertices are bit vectors; a face fixes some coordinates and frees the rest.
    """
    if n < 1:
        raise InputError("cube dimension must be at least 1")
    if symmetry not in ("full", "mirror"):
        raise InputError(f"unknown cube symmetry {symmetry!r}")
    N = 1 << n

    def face(fixed: dict[int, int]):
        return frozenset(v for v in range(N) if all((v >> i) & 1 == b for i, b in fixed.items()))

    cells: list[dict] = [dict() for _ in range(n + 1)]
    for mask in range(1 << n):
        free = [i for i in range(n) if (mask >> i) & 1]
        fixed_coords = [i for i in range(n) if not (mask >> i) & 1]
        for bits in range(1 << len(fixed_coords)):
            fixed = {i: (bits >> k) & 1 for k, i in enumerate(fixed_coords)}
            chain = {}
            for r, i in enumerate(free):
                chain[face({**fixed, i: 1})] = (-1) ** r
                chain[face({**fixed, i: 0})] = -((-1) ** r)
            cells[len(free)][face(fixed)] = chain
    flip0 = [v ^ 1 for v in range(N)]
    gens = [flip0]
    if symmetry == "full":
        for i in range(n - 1):
            swap = []
            for v in range(N):
                a, b = (v >> i) & 1, (v >> (i + 1)) & 1
                swap.append(v & ~(0b11 << i) | (a << (i + 1)) | (b << i))
            gens.append(swap)
    return from_vertex_cells(N, cells, gens)


# PSL2(Z) elements used by the modular tree fixtures
_S = ((0, -1), (1, 0))
_U = ((0, -1), (1, 1))


def make_modular_tree(variant: str = "t1") -> EquivariantComplex:
    """The Bass-Serre tree of PSL2(Z) in two cell structures.

    ``t1`` has an order-2 and an order-3 vertex joined by a free edge.
    ``t2`` keeps only the order-3 vertices; each edge joins two of them and
    is reversed by its order-2 stabilizer, so ``t2`` is not rigid.
    """
    spec = GroupSpec(MATRIX, 2, projective=True)
    S = GroupElement.matrix(_S, projective=True)
    U = GroupElement.matrix(_U, projective=True)
    I = spec.identity
    if variant == "t1":
        cells = [
            [OrbitCell(0, (S,), (), "order-2 vertex"), OrbitCell(0, (U,), (), "order-3 vertex")],
            [OrbitCell(1, (), (FaceRef(1, I, 1), FaceRef(0, I, -1)), "free edge")],
        ]
    elif variant == "t2":
        cells = [
            [OrbitCell(0, (U,), (), "order-3 vertex")],
            [OrbitCell(1, (S,), (FaceRef(0, S, 1), FaceRef(0, I, -1)), "double edge")],
        ]
    else:
        raise InputError(f"unknown modular tree variant {variant!r} (expected t1 or t2)")
    return EquivariantComplex(spec, cells).validate()


FIXTURES = {
    "square": make_square,
    "simplex": make_simplex,
    "polygon": make_polygon,
    "cube": make_cube,
    "tree": make_modular_tree,
}
