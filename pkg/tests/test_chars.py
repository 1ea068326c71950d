import pytest
from hypothesis import given
from hypothesis import strategies as st

from rigidcw.chars import (
    Embedding,
    character_table,
    conjugated_induction,
    induction_matrix,
    restrict_character,
)
from rigidcw.cyclotomic import Cyclotomic
from rigidcw.errors import RigidityError
from rigidcw.groups import GroupElement, generate_closure

P = GroupElement.permutation


def trivial(n):
    return generate_closure([], identity=GroupElement.identity_of("perm", n))


GROUPS = {
    "C2": lambda: generate_closure([P([1, 0])]),
    "C3": lambda: generate_closure([P([1, 2, 0])]),
    "C6": lambda: generate_closure([P([1, 2, 3, 4, 5, 0])]),
    "S3": lambda: generate_closure([P([1, 0, 2]), P([1, 2, 0])]),
    "D4": lambda: generate_closure([P([1, 2, 3, 0]), P([3, 2, 1, 0])]),
    "S4": lambda: generate_closure([P([1, 0, 2, 3]), P([1, 2, 3, 0])]),
}
CLASS_COUNTS = {"C2": 2, "C3": 3, "C6": 6, "S3": 3, "D4": 5, "S4": 5}


def exact_orthogonality(G, rows):
    """Both orthogonality relations, evaluated independently in exact cyclotomic arithmetic."""
    sizes = [len(c) for c in G.classes]
    r = len(rows)
    for i in range(r):
        for j in range(r):
            s = sum((sizes[k] * rows[i][k] * rows[j][k].conjugate() for k in range(r)), Cyclotomic.from_int(0))
            assert s == (G.order if i == j else 0)
    for a in range(r):
        for b in range(r):
            s = sum((rows[i][a] * rows[i][b].conjugate() for i in range(r)), Cyclotomic.from_int(0))
            assert s * sizes[a] == (G.order if a == b else 0)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_tables_are_orthogonal(name):
    G = GROUPS[name]()
    table = character_table(G)
    assert len(table.values) == CLASS_COUNTS[name]
    assert sum(d * d for d in table.degrees) == G.order
    exact_orthogonality(G, table.values)
    table.check_orthogonality()


def test_small_tables():
    rows = character_table(GROUPS["C2"]()).values
    assert rows == [[1, 1], [1, -1]]
    z = Cyclotomic.root(3)
    rows = character_table(GROUPS["C3"]()).values
    assert rows[0] == [1, 1, 1]
    assert {tuple(complex(v) for v in r) for r in rows[1:]} == {
        tuple(complex(v) for v in (Cyclotomic.from_int(1), z, z * z)),
        tuple(complex(v) for v in (Cyclotomic.from_int(1), z * z, z)),
    }
    assert character_table(GROUPS["S3"]()).values == [[1, 1, 1], [1, -1, 1], [2, 0, -1]]


def test_trivial_group_table():
    assert character_table(trivial(3)).values == [[1]]


def test_restriction():
    S3 = GROUPS["S3"]()
    C2 = S3.subgroup(generate_closure([P([1, 0, 2])]).elements)
    A3 = S3.subgroup(generate_closure([P([1, 2, 0])]).elements)
    triv, sign, std = character_table(S3).values
    emb = Embedding.inclusion(C2, S3)
    assert restrict_character(triv, emb) == [1, 1]
    assert restrict_character(std, emb) == [2, 0]
    assert restrict_character(sign, Embedding.inclusion(A3, S3)) == [1, 1, 1]


def test_induction_from_trivial_is_regular():
    for name, size in (("C2", 2), ("C3", 3)):
        G = GROUPS[name]()
        one = G.subgroup([G.identity])
        assert induction_matrix(Embedding.inclusion(one, G)).matrix == [[1]] * size


def test_induction_c2_into_s3():
    S3 = GROUPS["S3"]()
    C2 = S3.subgroup(generate_closure([P([1, 0, 2])]).elements)
    assert induction_matrix(Embedding.inclusion(C2, S3)).matrix == [[1, 0], [0, 1], [1, 1]]


def test_conjugated_induction():
    S3 = GROUPS["S3"]()
    C2 = S3.subgroup(generate_closure([P([1, 0, 2])]).elements)
    plain = induction_matrix(Embedding.inclusion(C2, S3)).matrix
    assert conjugated_induction(C2, S3, S3.identity).matrix == plain
    assert conjugated_induction(C2, S3, P([1, 2, 0])).matrix == plain
    one = S3.subgroup([S3.identity])
    assert conjugated_induction(one, S3, P([2, 1, 0])).matrix == [[1], [1], [2]]


def test_conjugated_induction_requires_containment():
    S3 = GROUPS["S3"]()
    C2 = S3.subgroup(generate_closure([P([1, 0, 2])]).elements)
    with pytest.raises(RigidityError):
        conjugated_induction(S3, C2, S3.identity)


def test_induction_frobenius_degrees():
    S4 = GROUPS["S4"]()
    D4 = S4.subgroup(GROUPS["D4"]().elements)
    M = induction_matrix(Embedding.inclusion(D4, S4)).matrix
    dg, dh = character_table(S4).degrees, character_table(D4).degrees
    for j, d in enumerate(dh):
        assert sum(dg[i] * M[i][j] for i in range(len(dg))) == 3 * d


@given(st.integers(1, 12), st.lists(st.integers(-5, 5), max_size=12), st.lists(st.integers(-5, 5), max_size=12))
def test_cyclotomic_ring_laws(n, a, b):
    x, y = Cyclotomic(n, a), Cyclotomic(n, b)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) * y == x * y + y * y
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-6 * (1 + abs(complex(x)) * abs(complex(y)))
    assert x.conjugate().conjugate() == x


def test_cyclotomic_lift_and_roots():
    assert Cyclotomic.root(4, 2) == -1
    assert Cyclotomic.root(3).lift(6) == Cyclotomic.root(6, 2)
    z = Cyclotomic.root(5)
    assert z * z * z * z * z == 1
    assert sum((Cyclotomic.root(5, k) for k in range(5)), Cyclotomic.from_int(0)) == 0
