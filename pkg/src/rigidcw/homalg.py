"""Integer chain complexes, Smith normal form and homology."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError

Matrix = list[list[int]]


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` in Smith form.

    ``U_inv`` and ``V_inv`` are filled when requested; multiplying them back
    gives an exact certificate that the transforms are unimodular.
    """

    U: Matrix
    S: Matrix
    V: Matrix
    U_inv: Matrix | None = None
    V_inv: Matrix | None = None

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _nearest(a: int, b: int) -> int:
    # quotient rounded to nearest, so remainders shrink at least by half
    q, r = divmod(a, b)
    return q + 1 if 2 * abs(r) > abs(b) else q


def _eliminate(A: Sequence[Sequence[int]], track: bool, inverses: bool = False):
    S = [list(map(int, row)) for row in A]
    m = len(S)
    n = len(S[0]) if m else 0
    U = _identity(m) if track else None
    V = _identity(n) if track else None
    Ui = _identity(m) if inverses else None
    Vi = _identity(n) if inverses else None

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        if track:
            U[i], U[k] = U[k], U[i]
        if inverses:
            for row in Ui:
                row[i], row[k] = row[k], row[i]

    def swap_cols(j, k):
        for row in S:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]
        if inverses:
            Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rs, rd = S[src], S[dst]
        for c in range(n):
            if rs[c]:
                rd[c] += q * rs[c]
        if track:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] += q * us[c]
        if inverses:  # inverse op: col_src -= q * col_dst
            for row in Ui:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in S:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
        if inverses:  # inverse op: row_src -= q * row_dst
            vd, vs = Vi[dst], Vi[src]
            for c in range(n):
                if vd[c]:
                    vs[c] -= q * vd[c]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = S[t][t]
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -_nearest(S[i][t], piv))
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -_nearest(S[t][j], piv))
            rest = [(abs(S[i][t]), i, "r") for i in range(t + 1, m) if S[i][t]]
            rest += [(abs(S[t][j]), j, "c") for j in range(t + 1, n) if S[t][j]]
            if rest:
                _, k, kind = min(rest)
                if kind == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            if track:
                U[t] = [-x for x in U[t]]
            if inverses:
                for row in Ui:
                    row[t] = -row[t]
        t += 1
    return U, S, V, t, Ui, Vi


def smith_normal_form(A: Sequence[Sequence[int]], inverses: bool = False) -> SNFResult:
    """Smith normal form with transforms, exact over arbitrary-precision integers.

    Pivots are entries of least absolute value; no modular shortcuts.
    """
    U, S, V, _, Ui, Vi = _eliminate(A, track=True, inverses=inverses)
    return SNFResult(U, S, V, Ui, Vi)


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith form, in divisibility order."""
    if not A or not A[0]:
        return []
    _, S, _, t, _, _ = _eliminate(A, track=False)
    return [S[i][i] for i in range(t)]


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion


@dataclass
class IntegerChainComplex:
    """``differentials[n]`` maps degree ``n`` to ``n - 1``: a ``sizes[n-1] x sizes[n]`` matrix."""

    sizes: list[int]
    differentials: list[Matrix]
    labels: list[list] | None = None

    def __post_init__(self):
        if len(self.differentials) != len(self.sizes):
            raise InputError("need one differential per degree (the degree-0 one is empty)")
        for n in range(1, len(self.sizes)):
            D = self.differentials[n]
            if len(D) != self.sizes[n - 1] or any(len(r) != self.sizes[n] for r in D):
                raise InputError(f"differential {n} has the wrong shape")

    @property
    def top(self) -> int:
        return len(self.sizes) - 1

    def check(self):
        """Raise ``InputError`` naming a pair of basis elements where d∘d is nonzero."""
        for n in range(2, len(self.sizes)):
            A, B = self.differentials[n - 1], self.differentials[n]
            for i, row in enumerate(A):
                nz = [(k, x) for k, x in enumerate(row) if x]
                for j in range(self.sizes[n]):
                    if sum(x * B[k][j] for k, x in nz):
                        name = (lambda d, k: self.labels[d][k] if self.labels else f"#{k}")
                        raise InputError(
                            f"boundary of boundary is nonzero: {name(n, j)} (degree {n}) hits {name(n - 2, i)}")
        return self

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * s for n, s in enumerate(self.sizes))


def homology(C: IntegerChainComplex) -> list[HomologyGroup]:
    ranks = [0] * (len(C.sizes) + 1)
    torsion: list[tuple[int, ...]] = [()] * (len(C.sizes) + 1)
    for n in range(1, len(C.sizes)):
        f = invariant_factors(C.differentials[n])
        ranks[n] = len(f)
        torsion[n] = tuple(d for d in f if d > 1)
    return [HomologyGroup(n, C.sizes[n] - ranks[n] - ranks[n + 1], torsion[n + 1]) for n in range(len(C.sizes))]


def chain_complex_of_cells(cells: Sequence[Sequence], boundary) -> IntegerChainComplex:
    """Chain complex of explicitly listed cells; ``boundary(c)`` yields ``(face, coefficient)`` pairs."""
    index = [{c: i for i, c in enumerate(cs)} for cs in cells]
    diffs: list[Matrix] = [[]]
    for n in range(1, len(cells)):
        D = [[0] * len(cells[n]) for _ in cells[n - 1]]
        for j, c in enumerate(cells[n]):
            for f, a in boundary(c):
                D[index[n - 1][f]][j] += a
        diffs.append(D)
    return IntegerChainComplex([len(cs) for cs in cells], diffs, [list(cs) for cs in cells])


def chain_complex_of_space(X) -> IntegerChainComplex:
    """Cellular chain complex of the enumerated cells of ``X``; verifies d∘d = 0."""
    return chain_complex_of_cells(X.enumerate_cells(), X.boundary).check()


def space_homology(X) -> list[HomologyGroup]:
    return homology(chain_complex_of_space(X))


def euler_characteristic(X) -> int:
    """Alternating count of enumerated cells (or of basis sizes for a chain complex)."""
    if isinstance(X, IntegerChainComplex):
        return X.euler_characteristic()
    return sum((-1) ** n * k for n, k in enumerate(X.cell_counts()))


def reduced_euler(X) -> int:
    return euler_characteristic(X) - 1


def equivariant_euler_characteristic(X) -> Fraction:
    """Sum over orbit representatives of ``(-1)^dim / |stabilizer|``."""
    return X.equivariant_euler_characteristic()


def format_homology(groups: Sequence[HomologyGroup]) -> list[str]:
    return [f"H_{h.degree} = {h}" for h in groups]
