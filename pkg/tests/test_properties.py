import random
import warnings
from itertools import combinations

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from rigidcw import complex as cx
from rigidcw import rigidify
from rigidcw.fixtures import from_vertex_cells
from rigidcw.groups import GroupElement, generate_closure, is_normal
from rigidcw.homalg import euler_characteristic, smith_normal_form, space_homology

METHODS = ["rfs", "hybrid", "vss", "barycentric"]


@st.composite
def symmetric_simplicial_complexes(draw):
    """A small simplicial complex invariant under a random group of vertex permutations."""
    n = draw(st.integers(3, 6))
    gens = draw(st.lists(st.permutations(range(n)), max_size=2)) or [list(range(n))]
    top = draw(st.integers(1, 3))
    seeds = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=2, max_size=top + 1), min_size=1, max_size=3))
    G = generate_closure([GroupElement.permutation(g) for g in gens])
    simplices = set()
    for s in seeds:
        for g in G.elements:
            image = tuple(sorted(g.entries[v] for v in s))
            for k in range(1, len(image) + 1):
                simplices.update(combinations(image, k))
    dim = max(len(s) for s in simplices) - 1
    cells = [{} for _ in range(dim + 1)]
    for s in simplices:
        d = len(s) - 1
        cells[d][frozenset(s)] = {frozenset(s[:i] + s[i + 1:]): (-1) ** i for i in range(d + 1)} if d else {}
    return from_vertex_cells(n, cells, gens), G


def complexes():
    return symmetric_simplicial_complexes().map(lambda pair: pair[0])


def rigidify_quietly(X, method, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return rigidify(X, method, **kwargs)


def facet_orbits_are_free(X):
    """Cells whose facets are all rigid: facet orbits have size [G : G^pw] and G^pw is normal."""
    for m in range(1, len(X.cells)):
        for k in range(len(X.cells[m])):
            facets = dict(X.base_boundary(m, k))
            if not all(X.is_rigid_orbit(m - 1, c.orbit) for c in facets):
                continue
            G, P = X.stabilizer(m, k), X.pointwise_stabilizer(m, k)
            assert is_normal(G, P)
            assert all(len(o) == G.order // P.order for o in X.orbits_of_faces(m, k))


settings.register_profile("rigidcw", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("rigidcw")


@settings(max_examples=40)
@given(complexes(), st.sampled_from(METHODS))
def test_rigidification_invariants(X, method):
    Y = rigidify_quietly(X, method)
    assert Y.is_rigid()
    assert space_homology(Y) == space_homology(X)
    assert euler_characteristic(Y) == euler_characteristic(X)
    assert Y.equivariant_euler_characteristic() == X.equivariant_euler_characteristic()
    assert cx.loads(cx.dumps(Y)).cell_counts() == Y.cell_counts()


@settings(max_examples=30)
@given(complexes())
def test_refinement_is_monotone(X):
    counts = [rigidify_quietly(X, m).cell_counts() for m in METHODS]
    for coarse, fine in zip(counts, counts[1:]):
        assert all(a <= b for a, b in zip(coarse, fine))


@settings(max_examples=30)
@given(complexes(), st.sampled_from(["rfs", "vss"]))
def test_facet_orbits_after_partial_rigidification(X, method):
    for m in range(1, X.dimension + 1):
        facet_orbits_are_free(rigidify_quietly(X, method, through=m - 1))


@settings(max_examples=20)
@given(complexes(), st.integers(2, 4))
def test_jobs_are_deterministic(X, jobs):
    assert cx.dumps(rigidify_quietly(X, "rfs", jobs=jobs)) == cx.dumps(rigidify_quietly(X, "rfs"))


def matmul(A, B):
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32), st.sampled_from([1, 3, 50, 10**6]))
def test_smith_normal_form_certificate(m, n, seed, bound):
    rng = random.Random(seed)
    A = [[rng.randint(-bound, bound) if rng.random() < 0.7 else 0 for _ in range(n)] for _ in range(m)]
    r = smith_normal_form(A, inverses=True)
    assert matmul(matmul(r.U, A), r.V) == r.S
    assert matmul(r.U, r.U_inv) == identity(m)
    assert matmul(r.V, r.V_inv) == identity(n)
    d = r.diagonal
    assert all(r.S[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b % a == 0) if a else b == 0


@given(symmetric_simplicial_complexes())
def test_orbit_stabilizer_counts(pair):
    X, G = pair
    for d, cells in enumerate(X.enumerate_cells()):
        for j in range(len(X.cells[d])):
            members = sum(1 for c in cells if c.orbit == j)
            assert members * X.stabilizer(d, j).order == G.order
