"""Exact group elements and explicit finite subgroups.

Ambient groups are either integer matrix groups (optionally projective,
i.e. ``M`` and ``-M`` identified) or permutation groups on ``{0, ..., d-1}``.
Stabilizers are finite and stored as fully enumerated tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError, ResourceError

MATRIX = "matrix"
PERMUTATION = "permutation"
_KIND_TAG = {MATRIX: 0, PERMUTATION: 1}

DEFAULT_CLOSURE_BOUND = 10_000


def _canonical_sign(entries):
    for x in entries:
        if x:
            return entries if x > 0 else tuple(-y for y in entries)
    return entries


class GroupElement:
    """An element of the ambient group.

    Instances are immutable and hashable; ``key`` gives the total order used
    for every tie-break (variant tag, degree, entries).
    """

    __slots__ = ("kind", "degree", "entries", "projective", "key", "_hash")

    def __init__(self, kind, degree, entries, projective=False):
        entries = tuple(int(x) for x in entries)
        if kind == MATRIX:
            if len(entries) != degree * degree:
                raise InputError(f"matrix element needs {degree * degree} entries, got {len(entries)}")
            det = _determinant(entries, degree)
            if det not in (1, -1):
                raise InputError(f"matrix {list(entries)} has determinant {det}, not invertible over Z")
            if projective:
                entries = _canonical_sign(entries)
        elif kind == PERMUTATION:
            if sorted(entries) != list(range(degree)):
                raise InputError(f"{list(entries)} is not a permutation of 0..{degree - 1}")
            projective = False
        else:
            raise InputError(f"unknown element kind {kind!r}")
        self._set(kind, degree, entries, bool(projective))

    def _set(self, kind, degree, entries, projective):
        self.kind = kind
        self.degree = degree
        self.entries = entries
        self.projective = projective
        self.key = (_KIND_TAG[kind], degree, entries)
        self._hash = hash(self.key)

    @classmethod
    def _trusted(cls, kind, degree, entries, projective):
        # skips validation; callers guarantee a valid canonical encoding
        obj = cls.__new__(cls)
        obj._set(kind, degree, entries, projective)
        return obj

    @classmethod
    def matrix(cls, rows, projective=False):
        rows = [list(r) for r in rows]
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise InputError("matrix element must be square")
        return cls(MATRIX, d, [x for r in rows for x in r], projective)

    @classmethod
    def permutation(cls, images):
        images = list(images)
        return cls(PERMUTATION, len(images), images)

    @classmethod
    def identity_of(cls, kind, degree, projective=False):
        if kind == PERMUTATION:
            return cls._trusted(PERMUTATION, degree, tuple(range(degree)), False)
        ent = tuple(1 if i == j else 0 for i in range(degree) for j in range(degree))
        return cls._trusted(MATRIX, degree, ent, bool(projective))

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.key == other.key and self.projective == other.projective

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        if self.kind == PERMUTATION:
            return f"perm{list(self.entries)}"
        d = self.degree
        rows = [list(self.entries[i * d:(i + 1) * d]) for i in range(d)]
        return f"{'pmat' if self.projective else 'mat'}{rows}"

    def _check_compatible(self, other):
        if (self.kind, self.degree, self.projective) != (other.kind, other.degree, other.projective):
            raise InputError(f"cannot combine {self!r} with {other!r}: variant or degree mismatch")

    def __mul__(self, other):
        return multiply(self, other)

    def inverse(self):
        return inverse(self)

    def is_identity(self):
        return self == GroupElement.identity_of(self.kind, self.degree, self.projective)

    def rows(self):
        d = self.degree
        return [list(self.entries[i * d:(i + 1) * d]) for i in range(d)]

    def to_json(self):
        return list(self.entries)


def _determinant(entries, d):
    m = [[Fraction(entries[i * d + j]) for j in range(d)] for i in range(d)]
    det = Fraction(1)
    for c in range(d):
        piv = next((r for r in range(c, d) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, d):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return int(det)


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    """Exact product ``a*b`` (apply ``b`` first, then ``a``)."""
    a._check_compatible(b)
    if a.kind == PERMUTATION:
        ae = a.entries
        return GroupElement._trusted(PERMUTATION, a.degree, tuple(ae[i] for i in b.entries), False)
    d = a.degree
    ae, be = a.entries, b.entries
    out = tuple(
        sum(ae[i * d + k] * be[k * d + j] for k in range(d))
        for i in range(d)
        for j in range(d)
    )
    if a.projective:
        out = _canonical_sign(out)
    return GroupElement._trusted(MATRIX, d, out, a.projective)


def inverse(a: GroupElement) -> GroupElement:
    if a.kind == PERMUTATION:
        inv = [0] * a.degree
        for i, x in enumerate(a.entries):
            inv[x] = i
        return GroupElement._trusted(PERMUTATION, a.degree, tuple(inv), False)
    d = a.degree
    m = [[Fraction(a.entries[i * d + j]) for j in range(d)] + [Fraction(int(i == j)) for j in range(d)]
         for i in range(d)]
    for c in range(d):
        piv = next(r for r in range(c, d) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(d):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    out = tuple(int(m[i][d + j]) for i in range(d) for j in range(d))
    if a.projective:
        out = _canonical_sign(out)
    return GroupElement._trusted(MATRIX, d, out, a.projective)


def canonical(a: GroupElement) -> GroupElement:
    """Canonical form; idempotent. Elements are always stored canonically."""
    if a.projective:
        return GroupElement._trusted(MATRIX, a.degree, _canonical_sign(a.entries), True)
    return a


@dataclass(frozen=True)
class GroupSpec:
    """Descriptor of the ambient group: element variant, degree, projectivity."""

    kind: str
    degree: int
    projective: bool = False

    def __post_init__(self):
        if self.kind not in _KIND_TAG:
            raise InputError(f"unknown group kind {self.kind!r}")
        if self.degree < 1:
            raise InputError("group degree must be positive")

    @property
    def identity(self) -> GroupElement:
        return GroupElement.identity_of(self.kind, self.degree, self.projective)

    def element(self, data) -> GroupElement:
        """Decode the text encoding: row-major integer array or image array."""
        if not isinstance(data, (list, tuple)):
            raise InputError(f"group element must be an array, got {data!r}")
        if data and isinstance(data[0], (list, tuple)):
            data = [x for row in data for x in row]
        if any(isinstance(x, bool) or not isinstance(x, int) for x in data):
            raise InputError(f"group element entries must be integers: {data!r}")
        if self.kind == MATRIX:
            return GroupElement(MATRIX, self.degree, data, self.projective)
        if len(data) != self.degree:
            raise InputError(f"permutation must have {self.degree} images, got {len(data)}")
        return GroupElement(PERMUTATION, self.degree, data)

    def check(self, g: GroupElement) -> GroupElement:
        if (g.kind, g.degree, g.projective) != (self.kind, self.degree, self.projective):
            raise InputError(f"{g!r} does not belong to the ambient group {self}")
        return g

    def to_json(self):
        return {"kind": self.kind, "degree": self.degree, "projective": self.projective}


class FiniteGroupTable:
    """A finite group given by its sorted element list.

    The multiplication table, inverse table, conjugacy classes and exponent
    are derived lazily and cached.
    """

    def __init__(self, elements: Iterable[GroupElement], identity: GroupElement):
        self.elements = sorted(set(elements))
        self.index = {g: i for i, g in enumerate(self.elements)}
        if identity not in self.index:
            raise InputError("group element list lacks the identity")
        self.identity = identity
        self.identity_index = self.index[identity]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.index

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"FiniteGroupTable(order={self.order})"

    @cached_property
    def fingerprint(self):
        return tuple(g.key for g in self.elements)

    @cached_property
    def mult_table(self) -> list[list[int]]:
        idx, els = self.index, self.elements
        return [[idx[a * b] for b in els] for a in els]

    @cached_property
    def inverse_table(self) -> list[int]:
        return [self.index[g.inverse()] for g in self.elements]

    def mul(self, i: int, j: int) -> int:
        return self.mult_table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse_table[i]

    def power(self, i: int, k: int) -> int:
        out = self.identity_index
        row = self.mult_table
        for _ in range(k):
            out = row[out][i]
        return out

    @cached_property
    def element_orders(self) -> list[int]:
        orders = []
        table = self.mult_table
        for i in range(self.order):
            k, x = 1, i
            while x != self.identity_index:
                x = table[x][i]
                k += 1
            orders.append(k)
        return orders

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders) if self.elements else 1

    @cached_property
    def classes(self) -> list[list[int]]:
        """Conjugacy classes as sorted index lists, ordered by least element key."""
        table, inv = self.mult_table, self.inverse_table
        seen = [False] * self.order
        out = []
        for i in range(self.order):
            if seen[i]:
                continue
            cls = sorted({table[table[x][i]][inv[x]] for x in range(self.order)})
            for c in cls:
                seen[c] = True
            out.append(cls)
        return out

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for c, cls in enumerate(self.classes):
            for i in cls:
                out[i] = c
        return out

    def is_abelian(self) -> bool:
        t = self.mult_table
        return all(t[i][j] == t[j][i] for i in range(self.order) for j in range(i))

    def subgroup(self, elements: Iterable[GroupElement]) -> "FiniteGroupTable":
        els = set(elements)
        if not els <= set(self.index):
            raise InputError("subgroup elements are not contained in the group")
        return FiniteGroupTable(els | {self.identity}, self.identity)

    def issubset(self, other: "FiniteGroupTable") -> bool:
        return all(g in other.index for g in self.elements)

    def intersection(self, other: "FiniteGroupTable") -> "FiniteGroupTable":
        return FiniteGroupTable([g for g in self.elements if g in other.index], self.identity)

    def generators(self) -> list[GroupElement]:
        """A small generating set, picked greedily in key order."""
        gens: list[GroupElement] = []
        reached = {self.identity}
        for g in self.elements:
            if g not in reached:
                gens.append(g)
                reached = set(generate_closure(gens, identity=self.identity).elements)
                if len(reached) == self.order:
                    break
        return gens


def generate_closure(gens: Sequence[GroupElement], identity: GroupElement | None = None,
                     bound: int = DEFAULT_CLOSURE_BOUND) -> FiniteGroupTable:
    """Enumerate the finite group generated by ``gens``.

    ``identity`` is required when ``gens`` is empty.
    """
    gens = list(gens)
    if identity is None:
        if not gens:
            raise InputError("identity must be supplied for an empty generator list")
        g0 = gens[0]
        identity = GroupElement.identity_of(g0.kind, g0.degree, g0.projective)
    for g in gens:
        identity._check_compatible(g)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > bound:
                        raise ResourceError(
                            f"infinite or oversized stabilizer: closure exceeds {bound} elements")
        frontier = nxt
    return FiniteGroupTable(seen, identity)


def conjugacy_classes(G: FiniteGroupTable) -> list[list[int]]:
    return G.classes


@dataclass(frozen=True)
class CosetList:
    subgroup: FiniteGroupTable
    representatives: tuple[GroupElement, ...]

    def __len__(self):
        return len(self.representatives)


def left_cosets(G: FiniteGroupTable, H: FiniteGroupTable) -> CosetList:
    """Left cosets ``gH``, each represented by its least-key element."""
    if not H.issubset(G):
        raise InputError("subgroup is not contained in the group")
    seen = set()
    reps = []
    for g in G.elements:  # sorted, so the first unseen element is the least of its coset
        if g in seen:
            continue
        reps.append(g)
        seen.update(g * h for h in H.elements)
    return CosetList(H, tuple(reps))


def is_normal(G: FiniteGroupTable, N: FiniteGroupTable) -> bool:
    if not N.issubset(G):
        raise InputError("subgroup is not contained in the group")
    members = N.index
    for g in G.elements:
        gi = g.inverse()
        if any(g * n * gi not in members for n in N.elements):
            return False
    return True


def abelian_invariants(G: FiniteGroupTable, N: FiniteGroupTable) -> list[int]:
    """Invariant factors of the abelian quotient ``G/N`` (N must contain [G, G])."""
    # order of gN for every coset
    reps = left_cosets(G, N).representatives
    members = N.index
    orders = []
    for g in reps:
        k, x = 1, g
        while x not in members:
            x = x * g
            k += 1
        orders.append(k)
    factors: list[list[int]] = []
    for p in _prime_factors(len(reps)):
        top = max(_p_part(o, p) for o in orders)
        a = round(math.log(top, p))
        # elements killed by p^k number p^(sum_i min(k, a_i)) over the p-primary factors
        s = [0] + [round(math.log(sum(1 for o in orders if (p ** k) % o == 0), p)) for k in range(1, a + 1)]
        ge = [s[k] - s[k - 1] for k in range(1, a + 1)] + [0]  # ge[k-1] = #{i : a_i >= k}
        part = []
        for k in range(1, a + 1):
            part += [p ** k] * (ge[k - 1] - ge[k])
        factors.append(sorted(part))
    # combine p-parts into invariant factors d1 | d2 | ...
    width = max((len(f) for f in factors), default=0)
    out = [1] * width
    for f in factors:
        padded = [1] * (width - len(f)) + f
        out = [x * y for x, y in zip(out, padded)]
    return [d for d in out if d > 1]


def _p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def derived_subgroup(G: FiniteGroupTable) -> FiniteGroupTable:
    comms = set()
    for a in G.elements:
        ai = a.inverse()
        for b in G.elements:
            comms.add(ai * b.inverse() * a * b)
    return generate_closure(sorted(comms), identity=G.identity)
