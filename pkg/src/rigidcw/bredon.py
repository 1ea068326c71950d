"""Bredon homology with representation-ring coefficients, torsion subcomplexes, stabilizer census."""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass

from sympy import isprime

from .chars import character_table, conjugated_induction
from .complex import EquivariantComplex, FaceRef, OrbitCell
from .errors import InputError, RigidityError
from .groups import FiniteGroupTable, abelian_invariants, derived_subgroup
from .homalg import HomologyGroup, IntegerChainComplex, homology


@dataclass
class BredonComplex:
    """Degree ``n`` is the sum over n-cell orbits of ``Z^(number of irreducibles)``.

    ``blocks[n]`` lists ``(orbit, rank)`` in basis order.
    """

    blocks: list[list[tuple[int, int]]]
    chain: IntegerChainComplex

    @property
    def ranks(self) -> list[int]:
        return self.chain.sizes


def require_rigid(X: EquivariantComplex, what: str = "Bredon homology") -> None:
    report = X.rigidity()
    if not report.rigid:
        listing = "; ".join(str(o) for o in report.offenders)
        raise RigidityError(f"{what} needs a rigid complex; non-rigid cells: {listing}", report.offenders)


def bredon_chain_complex(X: EquivariantComplex) -> BredonComplex:
    """Assemble the Bredon chain complex; each face contributes ``incidence * induction``."""
    require_rigid(X)
    blocks = []
    offsets = []
    for d, orbits in enumerate(X.cells):
        row, off, total = [], [], 0
        for j in range(len(orbits)):
            r = len(character_table(X.stabilizer(d, j)).values)
            row.append((j, r))
            off.append(total)
            total += r
        blocks.append(row)
        offsets.append(off)
    sizes = [sum(r for _, r in row) for row in blocks]
    diffs: list[list[list[int]]] = [[]]
    for n in range(1, len(X.cells)):
        D = [[0] * sizes[n] for _ in range(sizes[n - 1])]
        for j, oc in enumerate(X.cells[n]):
            G = X.stabilizer(n, j)
            c0 = offsets[n][j]
            for fr in oc.boundary:
                M = conjugated_induction(G, X.stabilizer(n - 1, fr.orbit), fr.elt).matrix
                r0 = offsets[n - 1][fr.orbit]
                for a, mrow in enumerate(M):
                    for b, x in enumerate(mrow):
                        if x:
                            D[r0 + a][c0 + b] += fr.incidence * x
        diffs.append(D)
    labels = [[f"{X.orbit(d, j).name(j)}:chi{i}" for j, r in row for i in range(r)] for d, row in enumerate(blocks)]
    return BredonComplex(blocks, IntegerChainComplex(sizes, diffs, labels).check())


def bredon_homology(X: EquivariantComplex) -> list[HomologyGroup]:
    return homology(bredon_chain_complex(X).chain)


def torsion_subcomplex(X: EquivariantComplex, ell: int) -> EquivariantComplex:
    """Orbit cells whose stabilizer order is divisible by the prime ``ell``."""
    if isinstance(ell, bool) or not isinstance(ell, int) or not isprime(ell):
        raise InputError(f"{ell!r} is not a prime")
    if not X.is_rigid():
        warnings.warn("torsion subcomplex of a non-rigid complex", stacklevel=2)
    keep = [[j for j in range(len(orbits)) if X.stabilizer(d, j).order % ell == 0]
            for d, orbits in enumerate(X.cells)]
    index = [{j: i for i, j in enumerate(row)} for row in keep]
    # seed every kept orbit with all its cells in X; their cofaces may be gone
    present: dict[tuple[int, int], list] = {}
    for d, cs in enumerate(X.enumerate_cells()):
        for c in cs:
            if c.orbit in index[d]:
                present.setdefault((d, c.orbit), []).append(c.elt)
    cells = []
    for d, row in enumerate(keep):
        out = []
        for j in row:
            oc = X.orbit(d, j)
            bd = tuple(FaceRef(index[d - 1][fr.orbit], fr.elt, fr.incidence)
                       for fr in oc.boundary if fr.orbit in index[d - 1])
            out.append(OrbitCell(d, oc.stabilizer_gens, bd, oc.label, tuple(present.get((d, j), ())),
                                 _table=oc._table))
        cells.append(out)
    return EquivariantComplex(X.group, cells)


# ---- census -----------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class GroupFingerprint:
    """Order, element-order multiset and abelianization: not a certified isomorphism type."""

    order: int
    element_orders: tuple[int, ...]
    abelianization: tuple[int, ...]

    @classmethod
    def of(cls, G: FiniteGroupTable) -> "GroupFingerprint":
        ab = tuple(abelian_invariants(G, derived_subgroup(G)))
        return cls(G.order, tuple(sorted(G.element_orders)), ab)

    @property
    def is_abelian(self) -> bool:
        prod = 1
        for d in self.abelianization:
            prod *= d
        return prod == self.order

    def name(self) -> str:
        if self.order == 1:
            return "1"
        if self.is_abelian:
            counts = Counter(self.abelianization)
            return " x ".join(f"C{d}" + (f"^{k}" if k > 1 else "") for d, k in sorted(counts.items()))
        ab = "x".join(f"C{d}" for d in self.abelianization) or "1"
        return f"N{self.order}[ab {ab}]"


@dataclass
class StabilizerCensus:
    types: list[GroupFingerprint]
    orbits: list[list[int]]  # [type][dim]
    cells: list[list[int]]

    def orbit_totals(self) -> list[int]:
        return [sum(col) for col in zip(*self.orbits)] if self.orbits else []

    def format(self) -> str:
        dims = len(self.orbits[0]) if self.orbits else 0
        names = [t.name() for t in self.types]
        head = ["stabilizer type"] + names
        rows = [head]
        for d in range(dims):
            label = {0: "vertices", 1: "edges"}.get(d, f"{d}-cells")
            rows.append([label] + [f"{self.orbits[t][d]} ({self.cells[t][d]})" for t in range(len(self.types))])
        widths = [max(len(r[i]) for r in rows) for i in range(len(head))]
        lines = ["  ".join(x.ljust(w) if i == 0 else x.rjust(w) for i, (x, w) in enumerate(zip(r, widths)))
                 for r in rows]
        lines.append("entries: orbits (cells); types are fingerprints, not certified isomorphism types")
        for t, name in zip(self.types, names):
            lines.append(f"  {name}: order {t.order}, element orders {list(t.element_orders)}, "
                         f"abelianization {list(t.abelianization) or [1]}")
        return "\n".join(lines)


def stabilizer_census(X: EquivariantComplex) -> StabilizerCensus:
    dims = len(X.cells)
    kind: dict[tuple[int, int], GroupFingerprint] = {}
    for d, orbits in enumerate(X.cells):
        for j in range(len(orbits)):
            kind[(d, j)] = GroupFingerprint.of(X.stabilizer(d, j))
    types = sorted(set(kind.values()))
    pos = {t: i for i, t in enumerate(types)}
    orbits = [[0] * dims for _ in types]
    cells = [[0] * dims for _ in types]
    for (d, _), t in kind.items():
        orbits[pos[t]][d] += 1
    for d, cs in enumerate(X.enumerate_cells()):
        for c in cs:
            cells[pos[kind[(d, c.orbit)]]][d] += 1
    return StabilizerCensus(types, orbits, cells)
