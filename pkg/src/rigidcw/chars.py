"""Character tables of finite groups and induction between representation rings.

Tables are computed with Dixon's modular method: the class-multiplication
matrices are simultaneously diagonalised over a prime field F_p with
p = 1 mod exponent(G), and the resulting characters mod p are lifted to exact
cyclotomic integers through eigenvalue multiplicities.  Cyclic groups take a
closed-form shortcut.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from sympy import isprime, primitive_root

from .cyclotomic import Cyclotomic
from .errors import ArithmeticConsistencyError, InputError, ResourceError, RigidityError
from .groups import FiniteGroupTable, GroupElement

MAX_ORDER = 2000


@dataclass
class CharacterTable:
    group: FiniteGroupTable
    values: list[list[Cyclotomic]]  # rows: irreducibles, columns: conjugacy classes

    @property
    def classes(self):
        return self.group.classes

    @property
    def class_reps(self) -> list[int]:
        return [c[0] for c in self.group.classes]

    @property
    def degrees(self) -> list[int]:
        idc = self.group.class_of[self.group.identity_index]
        return [row[idc].integer_value() for row in self.values]

    def __len__(self):
        return len(self.values)

    def inner_product(self, f1: Sequence[Cyclotomic], f2: Sequence[Cyclotomic]) -> Fraction:
        return class_inner_product(self.group, f1, f2)

    def check_orthogonality(self):
        """Raise unless both orthogonality relations hold exactly."""
        G = self.group
        r = len(G.classes)
        if len(self.values) != r:
            raise ArithmeticConsistencyError(f"{len(self.values)} characters for {r} classes")
        for i in range(r):
            for j in range(i, r):
                ip = self.inner_product(self.values[i], self.values[j])
                if ip != (1 if i == j else 0):
                    raise ArithmeticConsistencyError(f"<chi_{i}, chi_{j}> = {ip}")
        for k in range(r):
            for l in range(k, r):
                s = Cyclotomic.from_int(0)
                for row in self.values:
                    s = s + row[k] * row[l].conjugate()
                expected = G.order // len(G.classes[k]) if k == l else 0
                if s != expected:
                    raise ArithmeticConsistencyError(f"column relation fails for classes {k}, {l}")
        if sum(d * d for d in self.degrees) != G.order:
            raise ArithmeticConsistencyError("sum of squared degrees differs from the group order")

    def format(self) -> str:
        head = ["class size"] + [str(len(c)) for c in self.classes]
        rows = [head] + [[f"chi_{i}"] + [repr(v) for v in row] for i, row in enumerate(self.values)]
        width = [max(len(r[c]) for r in rows) for c in range(len(head))]
        return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(r, width)) for r in rows)


def class_inner_product(G: FiniteGroupTable, f1, f2) -> Fraction:
    total = Cyclotomic.from_int(0)
    for k, cls in enumerate(G.classes):
        total = total + (f1[k] * f2[k].conjugate()) * len(cls)
    if not total.is_integer():
        raise ArithmeticConsistencyError(f"inner product sum {total} is not rational")
    return Fraction(total.integer_value(), G.order)


_cache: dict[tuple, CharacterTable] = {}
_cache_lock = threading.Lock()


def character_table(G: FiniteGroupTable) -> CharacterTable:
    """Full character table; rows sorted by (degree, value key)."""
    key = G.fingerprint
    hit = _cache.get(key)
    if hit is not None:
        return hit
    if G.order > MAX_ORDER:
        raise ResourceError(f"character tables are limited to groups of order <= {MAX_ORDER}")
    if max(G.element_orders) == G.order:
        rows = _cyclic_rows(G)
    else:
        rows = _dixon_rows(G)
    table = CharacterTable(G, _sorted_rows(G, rows))
    table.check_orthogonality()
    with _cache_lock:
        _cache.setdefault(key, table)
    return _cache[key]


def _sorted_rows(G, rows):
    idc = G.class_of[G.identity_index]
    e = G.exponent

    # negated coefficients put the trivial character first within degree 1
    def sort_key(row):
        return (row[idc].integer_value(), tuple(tuple(-c for c in v.lift(e).coeffs) for v in row))

    return sorted(rows, key=sort_key)


def _cyclic_rows(G: FiniteGroupTable) -> list[list[Cyclotomic]]:
    n = G.order
    gen = next(i for i in range(n) if G.element_orders[i] == n)
    log = {}
    x = G.identity_index
    for a in range(n):
        log[x] = a
        x = G.mul(x, gen)
    # abelian: every class is a singleton
    return [[Cyclotomic.root(n, j * log[cls[0]]) for cls in G.classes] for j in range(n)]


# ---- modular linear algebra -------------------------------------------------

def _rref(rows, p):
    """Row-reduced echelon basis of the span of ``rows`` over F_p."""
    m = [list(r) for r in rows]
    out = []
    if not m:
        return out
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r]]


def _nullspace(A, p):
    """Basis of {v : A v = 0} over F_p."""
    n = len(A[0])
    R = _rref(A, p)
    pivots = []
    for row in R:
        pivots.append(next(c for c in range(n) if row[c]))
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def _charpoly(A, p):
    """Characteristic polynomial (lowest degree first) via Hessenberg reduction."""
    n = len(A)
    H = [[x % p for x in row] for row in A]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for row in H:
                row[m], row[piv] = row[piv], row[m]
        inv = pow(H[m][m - 1], p - 2, p)
        for i in range(m + 1, n):
            f = H[i][m - 1] * inv % p
            if f:
                H[i] = [(a - f * b) % p for a, b in zip(H[i], H[m])]
                for row in H:
                    row[m] = (row[m] + f * row[i]) % p
    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [0] + prev  # x * p_{k-1}
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - H[k - 1][k - 1] * c) % p
        t = 1
        for i in range(k - 1, 0, -1):
            t = t * H[i][i - 1] % p
            coef = H[i - 1][k - 1] * t % p
            if coef:
                for j, c in enumerate(polys[i - 1]):
                    cur[j] = (cur[j] - coef * c) % p
        polys.append(cur)
    return polys[n]


def _roots(poly, p):
    out = []
    for lam in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * lam + c) % p
        if acc == 0:
            out.append(lam)
    return out


def _dixon_prime(order, exponent):
    p = exponent + 1
    while not (p > 2 * math.isqrt(order) + 2 and isprime(p)):
        p += exponent
    return p


def _dixon_rows(G: FiniteGroupTable) -> list[list[Cyclotomic]]:
    n = G.order
    classes = G.classes
    r = len(classes)
    e = G.exponent
    p = _dixon_prime(n, e)
    z = pow(primitive_root(p), (p - 1) // e, p)
    cls_of = G.class_of
    table = G.mult_table
    inv = G.inverse_table
    reps = [c[0] for c in classes]

    # structure constants: C_j C_k = sum_l c[j][k][l] C_l
    c = [[[0] * r for _ in range(r)] for _ in range(r)]
    for l, zl in enumerate(reps):
        for x in range(n):
            c[cls_of[x]][cls_of[table[inv[x]][zl]]][l] += 1
    mats = [[[c[j][k][l] % p for l in range(r)] for k in range(r)] for j in range(r)]

    spaces = [[[int(i == j) for j in range(r)] for i in range(r)]]
    for M in mats:
        if all(len(U) == 1 for U in spaces):
            break
        nxt = []
        for U in spaces:
            if len(U) == 1:
                nxt.append(U)
                continue
            pivots = [next(i for i, x in enumerate(b) if x) for b in U]
            images = [[sum(M[k][l] * b[l] for l in range(r)) % p for k in range(r)] for b in U]
            A = [[images[i][pivots[k]] for i in range(len(U))] for k in range(len(U))]
            if all(A[i][j] == (A[0][0] if i == j else 0) for i in range(len(U)) for j in range(len(U))):
                nxt.append(U)
                continue
            for lam in _roots(_charpoly(A, p), p):
                shifted = [[(A[i][j] - (lam if i == j else 0)) % p for j in range(len(U))] for i in range(len(U))]
                vecs = [[sum(v[i] * U[i][k] for i in range(len(U))) % p for k in range(r)]
                        for v in _nullspace(shifted, p)]
                nxt.append(_rref(vecs, p))
        spaces = nxt
    if len(spaces) != r or any(len(U) != 1 for U in spaces):
        raise ArithmeticConsistencyError("class matrices did not split into one-dimensional eigenspaces")

    idc = cls_of[G.identity_index]
    inv_cls = [cls_of[inv[rep]] for rep in reps]
    sizes = [len(cl) for cl in classes]
    power_class = []
    for rep in reps:
        row, x = [], G.identity_index
        for _ in range(e):
            row.append(cls_of[x])
            x = table[x][rep]
        power_class.append(row)
    e_inv = pow(e, p - 2, p)

    rows = []
    for (v,) in spaces:
        s = pow(v[idc], p - 2, p)
        w = [x * s % p for x in v]
        norm = sum(w[k] * w[inv_cls[k]] * pow(sizes[k], p - 2, p) for k in range(r)) % p
        d2 = n * pow(norm, p - 2, p) % p
        deg = next((d for d in range(1, math.isqrt(n) + 1) if d * d % p == d2), None)
        if deg is None:
            raise ArithmeticConsistencyError("no character degree matches the modular norm")
        theta = [deg * w[k] * pow(sizes[k], p - 2, p) % p for k in range(r)]
        row = []
        for k in range(r):
            mult = []
            for l in range(e):
                acc = sum(theta[power_class[k][i]] * pow(z, (-i * l) % e, p) for i in range(e))
                m = acc * e_inv % p
                if m > deg:
                    raise ArithmeticConsistencyError("eigenvalue multiplicity exceeds the degree")
                mult.append(m)
            row.append(Cyclotomic(e, mult))
        rows.append(row)
    return rows


# ---- embeddings and induction ----------------------------------------------

@dataclass
class Embedding:
    """An injective homomorphism ``source -> target`` given on element indices."""

    source: FiniteGroupTable
    target: FiniteGroupTable
    images: list[int]

    @classmethod
    def from_map(cls, source: FiniteGroupTable, target: FiniteGroupTable,
                 f: Callable[[GroupElement], GroupElement]) -> "Embedding":
        images = []
        for h in source.elements:
            img = f(h)
            if img not in target.index:
                raise InputError(f"image {img!r} of {h!r} is not in the target group")
            images.append(target.index[img])
        emb = cls(source, target, images)
        emb.verify()
        return emb

    @classmethod
    def inclusion(cls, source: FiniteGroupTable, target: FiniteGroupTable) -> "Embedding":
        return cls.from_map(source, target, lambda h: h)

    def verify(self):
        if len(set(self.images)) != len(self.images):
            raise InputError("embedding is not injective")
        S, T = self.source, self.target
        for s in S.generators():
            si = S.index[s]
            for h in range(S.order):
                if self.images[S.mul(h, si)] != T.mul(self.images[h], self.images[si]):
                    raise InputError("embedding is not a homomorphism")


def restrict_character(chi: Sequence[Cyclotomic], embed: Embedding) -> list[Cyclotomic]:
    """Class function on the source group: ``chi`` evaluated at image elements."""
    S, T = embed.source, embed.target
    return [chi[T.class_of[embed.images[cls[0]]]] for cls in S.classes]


@dataclass
class RepRingMap:
    source: FiniteGroupTable
    target: FiniteGroupTable
    embedding: Embedding
    matrix: list[list[int]]  # rows: target irreducibles, columns: source irreducibles


def induction_matrix(embed: Embedding) -> RepRingMap:
    """Matrix of induction R(H) -> R(G): entry (i, j) = <Res chi_i, phi_j>_H."""
    tab_g = character_table(embed.target)
    tab_h = character_table(embed.source)
    mat = []
    for chi in tab_g.values:
        res = restrict_character(chi, embed)
        row = []
        for phi in tab_h.values:
            ip = tab_h.inner_product(res, phi)
            if ip.denominator != 1 or ip < 0:
                raise ArithmeticConsistencyError(f"induction multiplicity {ip} is not a non-negative integer")
            row.append(int(ip))
        mat.append(row)
    index = embed.target.order // embed.source.order
    for j, dj in enumerate(tab_h.degrees):
        if sum(di * mat[i][j] for i, di in enumerate(tab_g.degrees)) != index * dj:
            raise ArithmeticConsistencyError("induced degrees do not add up to the index")
    return RepRingMap(embed.source, embed.target, embed, mat)


def conjugated_induction(source: FiniteGroupTable, target: FiniteGroupTable,
                         g: GroupElement) -> RepRingMap:
    """Induction along ``h -> g^-1 h g``; requires the conjugate to lie in ``target``."""
    gi = g.inverse()
    for h in source.elements:
        if gi * h * g not in target.index:
            raise RigidityError(f"conjugate of {h!r} by {g!r} is not in the face stabilizer")
    return induction_matrix(Embedding.from_map(source, target, lambda h: gi * h * g))
