from rigidcw import make_polygon, make_square
from rigidcw.subdivide import Subcomplex, contractible_check, sphere_boundary_check


def graph(vertices, edges):
    """1-dimensional subcomplex; ``edges`` maps a name to its (head, tail)."""
    boundary = {v: () for v in vertices}
    dims = {v: 0 for v in vertices}
    for e, (a, b) in edges.items():
        boundary[e] = ((a, 1), (b, -1)) if a != b else ()
        dims[e] = 1
    return Subcomplex(boundary, dims)


def cycle(prefix, n):
    vs = [f"{prefix}{i}" for i in range(n)]
    return vs, {f"{prefix}e{i}": (vs[(i + 1) % n], vs[i]) for i in range(n)}


def test_single_vertex_is_contractible():
    assert contractible_check(graph(["v"], {}))


def test_two_points_are_not_contractible():
    assert not contractible_check(graph(["a", "b"], {}))


def test_path_is_contractible():
    K = graph("abcd", {"ab": ("b", "a"), "bc": ("c", "b"), "cd": ("d", "c")})
    assert contractible_check(K)
    assert K.reduced_euler() == 0


def test_cycle_is_not_contractible():
    vs, es = cycle("c", 4)
    assert not contractible_check(graph(vs, es))


def test_disk_is_contractible():
    X = make_square()
    assert contractible_check(Subcomplex.closure(X, X.enumerate_cells()[2]))
    C = make_polygon(4)
    assert not contractible_check(Subcomplex.closure(C, C.enumerate_cells()[1]))


def test_sphere_checks():
    assert sphere_boundary_check(graph(["a", "b"], {}), 2)
    assert not sphere_boundary_check(graph(["a"], {}), 2)
    vs, es = cycle("c", 4)
    circle = graph(vs, es)
    assert sphere_boundary_check(circle, 3)
    assert sphere_boundary_check(circle, 3, final=True)


def test_two_disjoint_circles_fail_the_connectivity_guard():
    v1, e1 = cycle("p", 4)
    v2, e2 = cycle("q", 3)
    S = graph(v1 + v2, {**e1, **e2})
    assert S.euler_characteristic() == 0
    assert not sphere_boundary_check(S, 3)


def test_path_is_not_a_circle():
    K = graph("abc", {"ab": ("b", "a"), "bc": ("c", "b")})
    assert not sphere_boundary_check(K, 3)


def test_subcomplex_must_be_closed():
    import pytest

    with pytest.raises(ValueError):
        Subcomplex({"e": (("v", 1),)}, {"e": 1})
