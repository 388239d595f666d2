import pytest
from hypothesis import given, strategies as st

from orbikit.algebra import cyclic_group
from orbikit.borel import bar_EG
from orbikit.errors import EmptyInput, InvalidAction, InvalidComplex, NoSuchVertex, NotSimplicial
from orbikit.library import path_complex, simplex_boundary
from orbikit.simplicial import (
    OrderedComplex,
    Simplex,
    SimplicialAction,
    SSetMap,
    barycentric_subdivision,
    components,
    disjoint_union,
    fib_pi0,
    identity_map,
    minimal_circle,
    nerve_action,
    nerve_of_complex,
    point,
    product,
    quotient_by_action,
    simplicial_fiber,
    standard_simplex,
    star_neighborhood,
)

from oracles import brute_chain_counts, brute_product_counts

random_complexes = st.lists(
    st.sets(st.integers(0, 4), min_size=1, max_size=3), min_size=1, max_size=5
).map(lambda fs: OrderedComplex.from_facets([sorted(f) for f in fs]))


def test_simplex_boundary_nerve_counts_match_chain_search():
    K = simplex_boundary(2)
    X = nerve_of_complex(K, 3)
    assert X.counts() == brute_chain_counts([f for f in [(0, 1), (0, 2), (1, 2)]], 3)
    assert X.counts() == [6, 6, 0, 0]


@given(random_complexes)
def test_nerve_counts_property(K):
    X = nerve_of_complex(K, 3)
    labels = [[K.vertices[v] for v in f] for f in K.facets]
    assert X.counts() == brute_chain_counts(labels, 3)
    X.check()


@given(random_complexes)
def test_nerve_euler_characteristic_matches_complex(K):
    X = nerve_of_complex(K, K.dimension + 1)
    chi = sum((-1) ** (len(s) - 1) for s in K.simplices())
    assert X.euler_characteristic() == chi


def test_from_facets_drops_faces_and_sorts():
    K = OrderedComplex.from_facets([["b", "a"], ["a"], ["c", "b"]])
    assert K.vertices == ("a", "b", "c")
    assert K.facets == ((0, 1), (1, 2))


def test_invalid_complexes():
    with pytest.raises(EmptyInput):
        OrderedComplex.from_facets([])
    with pytest.raises(InvalidComplex):
        OrderedComplex((0, 1), ((1, 0),))
    with pytest.raises(InvalidComplex):
        OrderedComplex((0, 1, 2), ((0, 1),))
    with pytest.raises(NoSuchVertex):
        path_complex(2).vertex_index(7)


def test_face_of_degenerate_simplex():
    X = standard_simplex(1, 3)
    edge = X.cell(1, 0)
    s = X.degeneracy(edge, 0)  # eta (0, 0, 1)
    assert s.eta == (0, 0, 1)
    assert X.face(s, 0) == edge
    assert X.face(s, 1) == edge
    assert X.face(s, 2) == Simplex((0, 0), X.index(0, (0,)))


@pytest.mark.parametrize("X", [standard_simplex(2, 3), minimal_circle(3), point(3)])
def test_builtin_sets_satisfy_simplicial_identities(X):
    X.check()


@pytest.mark.parametrize("A,B", [
    (standard_simplex(1), standard_simplex(1)),
    (minimal_circle(3), minimal_circle(3)),
    (standard_simplex(2, 3), minimal_circle(3)),
])
def test_product_counts_match_brute_force(A, B):
    P = product(A, B).space
    assert P.counts() == brute_product_counts(A.counts(), B.counts(), P.N)
    P.check()


def test_square_has_two_triangles():
    P = product(standard_simplex(1, 2), standard_simplex(1, 2)).space
    assert P.counts() == [4, 5, 2]


def test_product_projections_are_simplicial():
    A, B = minimal_circle(3), standard_simplex(1, 3)
    pr = product(A, B)
    pr.first.check()
    pr.second.check()


def test_map_check_rejects_bad_map():
    X = standard_simplex(1)
    Y = standard_simplex(1)
    v0, v1 = X.index(0, (0,)), X.index(0, (1,))
    bad = SSetMap(X, Y, [[Simplex((0,), v0), Simplex((0,), v1)], [Simplex((0, 0), v0)]])
    with pytest.raises(NotSimplicial):
        bad.check()


def test_identity_composition():
    X = nerve_of_complex(simplex_boundary(2), 2)
    f = identity_map(X)
    assert (f @ f).same_cells(f)
    assert f.is_cell_isomorphism()


def test_free_quotient_of_bar_construction():
    G = cyclic_group(2)
    E, act = bar_EG(G, 4)
    assert act.is_free()
    B = quotient_by_action(E, act).space
    assert B.counts() == [1, 1, 1, 1, 1]
    B.check()


def test_action_must_be_homomorphism():
    X = nerve_of_complex(path_complex(1), 2)
    G = cyclic_group(2)
    swap = [[X.index(0, ((1,),)), X.index(0, ((0,),)), X.index(0, ((0, 1),))]]
    nonsense = [[list(range(X.count(n))) for n in range(3)], [swap[0]] + [list(range(X.count(n))) for n in (1, 2)]]
    with pytest.raises((InvalidAction, NotSimplicial)):
        SimplicialAction(G, X, nonsense)


def test_reflection_action_on_path():
    K = path_complex(2)
    X = nerve_of_complex(K, 2)
    G = cyclic_group(2)
    act = nerve_action(K, X, G, [(0, 1, 2), (2, 1, 0)])
    assert not act.is_free()
    q = quotient_by_action(X, act)
    assert q.space.counts() == [3, 2, 0]
    q.projection.check()


def test_components_and_disjoint_union():
    X = disjoint_union(point(2), minimal_circle(2))
    assert components(X).count == 2
    assert components(nerve_of_complex(simplex_boundary(2), 2)).count == 1


def test_star_neighborhood_of_path_end():
    X = nerve_of_complex(path_complex(2), 2)
    v = X.index(0, ((0,),))
    S = star_neighborhood(X, v).space
    # end vertex and the barycenter of its edge
    assert S.counts() == [2, 1, 0]
    with pytest.raises(NoSuchVertex):
        star_neighborhood(X, 99)


@pytest.mark.parametrize("K", [path_complex(2), simplex_boundary(2)])
@pytest.mark.parametrize("m", [2, 3])
def test_fib_pi0_of_product_projection_is_the_base(K, m):
    X = nerve_of_complex(K, 3)
    E, _ = bar_EG(cyclic_group(m), 3)
    pr = product(X, E)
    fp = fib_pi0(pr.first)
    assert fp.space.counts() == X.counts()
    assert fp.projection.is_cell_isomorphism()
    fp.quotient.check()


def test_fib_pi0_keeps_disconnected_fibers_apart():
    # two points over one point: the fiber has two components
    X = disjoint_union(point(2), point(2))
    Y = point(2)
    q = SSetMap(X, Y, [[Simplex((0,), 0), Simplex((0,), 0)], [], []])
    fp = fib_pi0(q)
    assert fp.space.counts() == [2, 0, 0]


def test_simplicial_fiber_of_projection():
    X = nerve_of_complex(path_complex(1), 2)
    E, _ = bar_EG(cyclic_group(2), 2)
    pr = product(X, E)
    F = simplicial_fiber(pr.first, 0).space
    assert F.counts() == E.counts()


def test_barycentric_subdivision_counts():
    S = barycentric_subdivision(simplex_boundary(2))
    assert len(S.vertices) == 6 and len(S.facets) == 6
