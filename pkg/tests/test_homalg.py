import random
from fractions import Fraction

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from rigidcw import make_modular_tree, make_polygon, make_simplex, make_square, rigidify
from rigidcw.errors import InputError
from rigidcw.homalg import (
    HomologyGroup,
    IntegerChainComplex,
    chain_complex_of_space,
    equivariant_euler_characteristic,
    euler_characteristic,
    format_homology,
    homology,
    invariant_factors,
    reduced_euler,
    smith_normal_form,
    space_homology,
)
from rigidcw.subdivide import Subcomplex


def matmul(A, B):
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def test_snf_small_cases():
    assert smith_normal_form([[2, 4], [6, 8]]).S == [[2, 0], [0, 4]]
    zero = smith_normal_form([[0, 0], [0, 0]])
    assert zero.S == [[0, 0], [0, 0]] and zero.U == [[1, 0], [0, 1]] and zero.V == [[1, 0], [0, 1]]
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).S == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_snf_rectangular_and_transforms():
    A = [[4, 6, 2], [2, 8, 10]]
    r = smith_normal_form(A, inverses=True)
    assert matmul(matmul(r.U, A), r.V) == r.S
    assert r.diagonal == [2, 2]
    assert matmul(r.U, r.U_inv) == [[1, 0], [0, 1]]


@pytest.mark.parametrize("seed", range(12))
def test_invariant_factors_against_sympy(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    A = [[rng.choice([0, 0, rng.randint(-30, 30)]) for _ in range(n)] for _ in range(m)]
    ref = sympy_snf(Matrix(A), domain=ZZ)
    expected = [abs(int(ref[i, i])) for i in range(min(m, n)) if ref[i, i] != 0]
    assert invariant_factors(A) == expected
    assert smith_normal_form(A).diagonal[: len(expected)] == expected


def test_chain_complex_shape_checks():
    with pytest.raises(InputError):
        IntegerChainComplex([1, 2], [[], [[1]]])
    bad = IntegerChainComplex([1, 1, 1], [[], [[1]], [[1]]], [["v"], ["e"], ["f"]])
    with pytest.raises(InputError, match="f .*hits v"):
        bad.check()


def test_chain_complex_of_fixtures():
    assert chain_complex_of_space(make_square()).sizes == [4, 4, 1]
    C = chain_complex_of_space(make_polygon(5))
    assert C.sizes == [5, 5]
    for col in zip(*C.differentials[1]):
        assert sorted(col) == [-1, 0, 0, 0, 1]
    assert chain_complex_of_space(make_modular_tree("t1")).sizes == [2, 1]


def test_homology_of_fixtures():
    assert [str(h) for h in space_homology(make_square())] == ["Z", "0", "0"]
    assert [str(h) for h in space_homology(make_polygon(6))] == ["Z", "Z"]
    assert [str(h) for h in space_homology(make_simplex(3))] == ["Z", "0", "0", "0"]


def test_tree_chain_from_the_necessity_example():
    C = IntegerChainComplex([5, 1], [[], [[1], [1], [-1], [-1], [-1]]])
    assert homology(C) == [HomologyGroup(0, 4), HomologyGroup(1, 0)]
    assert format_homology(homology(C)) == ["H_0 = Z^4", "H_1 = 0"]


def test_torsion_is_reported():
    # real projective plane: one cell in each dimension, d2 = 2, d1 = 0
    C = IntegerChainComplex([1, 1, 1], [[], [[0]], [[2]]])
    assert [str(h) for h in homology(C)] == ["Z", "Z/2", "0"]
    assert str(HomologyGroup(1, 3, (2, 6))) == "Z^3 + Z/2 + Z/6"


def test_euler_characteristics():
    assert euler_characteristic(make_square()) == 1
    assert euler_characteristic(rigidify(make_square(), "rfs")) == 7 - 8 + 2
    S0 = Subcomplex({"a": (), "b": ()}, {"a": 0, "b": 0})
    assert S0.euler_characteristic() == 2
    assert reduced_euler(make_square()) == 0
    assert equivariant_euler_characteristic(make_modular_tree("t1")) == Fraction(-1, 6)
    assert equivariant_euler_characteristic(make_modular_tree("t2")) == Fraction(-1, 6)
    assert euler_characteristic(chain_complex_of_space(make_polygon(3))) == 0


def test_equivariant_euler_of_free_vertex():
    import json

    from rigidcw import complex as cx

    doc = json.loads(cx.dumps(make_modular_tree("t1")))
    doc["cells"] = [[{"label": "v", "stabilizer_gens": [], "boundary": []}]]
    assert cx.from_dict(doc).equivariant_euler_characteristic() == 1
