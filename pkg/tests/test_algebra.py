import pytest
from hypothesis import given, strategies as st

from orbikit.algebra import (
    ChainComplex,
    FGAbelianGroup,
    FiniteGroup,
    GroupHom,
    IntMatrix,
    classify_homs,
    cohomology,
    cyclic_group,
    describe_group,
    determinantal_divisors,
    direct_product,
    enumerate_homs,
    groups_isomorphic,
    homology,
    induced_iso_in_degree,
    is_acyclic,
    make_group,
    permutation_group,
    reduced_homology,
    smith_normal_form,
    sparse_divisors,
    subgroup,
    symmetric_group,
)
from orbikit.borel import bar_EG, classifying_space
from orbikit.errors import InvalidTable, NotAChainComplex, TruncationError
from orbikit.fundamental import GroupPresentation
from orbikit.library import octahedron, path_complex, simplex_boundary
from orbikit.simplicial import OrderedComplex, identity_map, minimal_circle, nerve_of_complex, point, product

from oracles import betti, brute_homs, conjugacy_classes_of_tuples, torsion_p_rank

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


# --- groups ------------------------------------------------------------------------


def test_group_tables_are_validated():
    with pytest.raises(InvalidTable):
        FiniteGroup(((0, 1), (1, 1)))
    with pytest.raises(InvalidTable):
        FiniteGroup(((1, 0), (0, 1)))


def test_symmetric_group_basics():
    S3 = symmetric_group(3)
    assert S3.order == 6 and not S3.is_abelian()
    assert describe_group(S3) == "S3"
    assert describe_group(cyclic_group(4)) == "ℤ/4"
    assert describe_group(cyclic_group(1)) == "1"


def test_make_group_kinds():
    assert make_group("cyclic", 3).order == 3
    assert make_group("symmetric", 3).order == 6
    assert make_group("table", table=[[0, 1], [1, 0]]).order == 2
    with pytest.raises(ValueError):
        make_group("dihedral", 3)


def test_subgroup_inclusion_is_injective():
    S3 = symmetric_group(3)
    H, inc = subgroup(S3, [0, 1])
    assert H.order == 2 and inc.is_injective() and inc.is_homomorphism()


@pytest.mark.parametrize("G,H,expected", [
    (cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2)), False),
    (cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3)), True),
    (symmetric_group(3), cyclic_group(6), False),
    (symmetric_group(3), permutation_group([(1, 0, 2), (0, 2, 1)])[0], True),
])
def test_groups_isomorphic(G, H, expected):
    ok, wit = groups_isomorphic(G, H)
    assert ok is expected
    if ok:
        assert isinstance(wit, GroupHom)
        assert wit.is_homomorphism() and wit.is_bijective()


@given(st.permutations(range(6)))
def test_isomorphism_found_for_relabelled_s3(perm):
    S3 = symmetric_group(3)
    perm = list(perm)
    perm_inv = sorted(range(6), key=lambda i: perm[i])
    if perm[0] != 0:
        j = perm.index(0)
        perm[0], perm[j] = perm[j], perm[0]
        perm_inv = sorted(range(6), key=lambda i: perm[i])
    table = [[perm[S3.mul(perm_inv[a], perm_inv[b])] for b in range(6)] for a in range(6)]
    H = FiniteGroup(tuple(map(tuple, table)))
    ok, wit = groups_isomorphic(S3, H)
    assert ok and wit.is_bijective() and wit.is_homomorphism()


@pytest.mark.parametrize("G", [cyclic_group(2), cyclic_group(3), symmetric_group(3)])
def test_enumerate_homs_matches_brute_force(G):
    rel = [(1, 1, 2, 2), (1, 2, -1, -2)]
    assert sorted(enumerate_homs(2, rel, G)) == sorted(brute_homs(2, rel, G))


@pytest.mark.parametrize("G,count", [(cyclic_group(2), 2), (cyclic_group(1), 1), (symmetric_group(3), 3)])
def test_classify_homs_from_free_group_on_one_generator(G, count):
    P = GroupPresentation(1, ())
    classes = classify_homs(P, G)
    assert len(classes) == count
    assert len(classes) == conjugacy_classes_of_tuples(brute_homs(1, [], G), G)


def test_classify_homs_free_abelian_rank_two_into_s3():
    P = GroupPresentation.parse(2, ["abAB"])
    G = symmetric_group(3)
    assert len(classify_homs(P, G)) == conjugacy_classes_of_tuples(brute_homs(2, P.relators, G), G)


# --- Smith normal form -------------------------------------------------------------


@given(matrices)
def test_snf_is_a_valid_factorization(rows):
    M = IntMatrix(rows)
    r = smith_normal_form(M)
    assert r.U @ M @ r.V == r.D
    assert abs(r.U.det()) == 1 and abs(r.V.det()) == 1
    d = r.divisors
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    for i in range(r.D.nrows):
        for j in range(r.D.ncols):
            if i != j:
                assert r.D[i, j] == 0


@given(matrices)
def test_snf_matches_determinantal_divisors(rows):
    M = IntMatrix(rows)
    assert smith_normal_form(M).divisors == determinantal_divisors(M)


@given(matrices)
def test_sparse_elimination_matches_dense(rows):
    M = IntMatrix(rows)
    assert sparse_divisors(M.columns()) == smith_normal_form(M).divisors


def test_fg_abelian_group_strings():
    assert str(FGAbelianGroup(2, (2, 4))) == "ℤ^2 ⊕ ℤ/2 ⊕ ℤ/4"
    assert str(FGAbelianGroup()) == "0"
    assert FGAbelianGroup.parse("Z/2 + Z/3") == FGAbelianGroup(0, (6,))
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (2, 3))


@given(st.integers(0, 3), st.lists(st.integers(2, 12), max_size=3))
def test_fg_abelian_round_trip(rank, orders):
    g = FGAbelianGroup.from_cyclic(rank, orders)
    assert FGAbelianGroup.parse(str(g)) == g


# --- homology ----------------------------------------------------------------------


def test_circle_and_sphere():
    assert [str(g) for g in homology(minimal_circle(2))] == ["ℤ", "ℤ"]
    S2 = nerve_of_complex(simplex_boundary(3), 3)
    assert [str(g) for g in homology(S2)] == ["ℤ", "0", "ℤ"]


def test_torus_homology():
    C = minimal_circle(3)
    T = product(C, C).space
    assert [str(g) for g in homology(T)] == ["ℤ", "ℤ^2", "ℤ"]


def test_bz2_homology_and_cohomology():
    B = classifying_space(cyclic_group(2), 5)
    assert [str(g) for g in homology(B)] == ["ℤ", "ℤ/2", "0", "ℤ/2", "0"]
    assert [str(g) for g in cohomology(B)] == ["ℤ", "0", "ℤ/2", "0", "ℤ/2"]
    assert [str(g) for g in homology(B, coefficients=2)] == ["ℤ/2"] * 5
    assert [str(g) for g in cohomology(B, coefficients="mod 3")] == ["ℤ/3", "0", "0", "0", "0"]


@pytest.mark.parametrize("X", [
    nerve_of_complex(simplex_boundary(3), 3),
    nerve_of_complex(octahedron(), 3),
    classifying_space(cyclic_group(3), 4),
    classifying_space(cyclic_group(2), 4),
    product(minimal_circle(3), classifying_space(cyclic_group(2), 3)).space,
])
def test_homology_matches_rank_oracle(X):
    hs = homology(X)
    for n, g in enumerate(hs):
        assert g.rank == betti(X, n)
        for p in (2, 3):
            assert sum(1 for d in g.torsion if d % p == 0) == torsion_p_rank(X, n, p)


complexes = st.lists(
    st.sets(st.integers(0, 5), min_size=1, max_size=4), min_size=1, max_size=6
).map(lambda fs: OrderedComplex.from_facets([sorted(f) for f in fs]))


small_complexes = st.lists(
    st.sets(st.integers(0, 5), min_size=1, max_size=3), min_size=1, max_size=6
).map(lambda fs: OrderedComplex.from_facets([sorted(f) for f in fs]))


@given(small_complexes)
def test_random_complex_homology_matches_oracle(K):
    X = nerve_of_complex(K, K.dimension + 1)
    hs = homology(X, range(K.dimension + 1))
    for n, g in enumerate(hs):
        assert g.rank == betti(X, n)
        assert sum(1 for d in g.torsion if d % 2 == 0) == torsion_p_rank(X, n, 2)


@given(complexes)
def test_euler_characteristic_equals_alternating_betti_sum(K):
    X = nerve_of_complex(K, K.dimension + 1)
    hs = homology(X, range(K.dimension + 1))
    assert sum((-1) ** n * g.rank for n, g in enumerate(hs)) == sum((-1) ** (len(s) - 1) for s in K.simplices())


@given(complexes)
def test_universal_coefficients_cohomology(K):
    X = nerve_of_complex(K, K.dimension + 1)
    degs = range(K.dimension + 1)
    hs, cs = homology(X, degs), cohomology(X, degs)
    for n in degs:
        assert cs[n].rank == hs[n].rank
        assert cs[n].torsion == (hs[n - 1].torsion if n else ())


def test_homology_degree_above_truncation_raises():
    with pytest.raises(TruncationError):
        homology(point(2), [2])


def test_chain_complex_from_matrices_checks_d_squared():
    ok = ChainComplex.from_matrices([IntMatrix([[2]])])
    assert [str(g) for g in homology(ok)] == ["ℤ/2", "0"]
    with pytest.raises(NotAChainComplex):
        homology(ChainComplex.from_matrices([IntMatrix([[1]]), IntMatrix([[1]])]))


@pytest.mark.parametrize("m", [2, 3])
def test_eg_is_acyclic(m):
    E, _ = bar_EG(cyclic_group(m), 3)
    assert is_acyclic(E, 2)
    assert all(g.is_trivial for g in reduced_homology(E))


def test_identity_induces_isomorphisms():
    X = nerve_of_complex(simplex_boundary(3), 3)
    f = identity_map(X)
    assert all(induced_iso_in_degree(f, n) for n in range(3))


def test_inclusion_of_endpoint_into_path():
    from orbikit.simplicial import sub_simplicial_set
    X = nerve_of_complex(path_complex(2), 2)
    sub = sub_simplicial_set(X, [(0, 0)])
    assert induced_iso_in_degree(sub.inclusion, 0)
    assert induced_iso_in_degree(sub.inclusion, 1)


def test_collapse_of_circle_is_iso_only_in_degree_zero():
    from orbikit.simplicial import Simplex, SSetMap
    K = OrderedComplex.from_facets([[0, 1], [1, 2], [0, 2]])
    X = nerve_of_complex(K, 2)
    P = point(2)
    f = SSetMap(X, P, [[Simplex((0,) * (n + 1), 0) for _ in range(X.count(n))] for n in range(3)])
    f.check()
    assert induced_iso_in_degree(f, 0)
    assert not induced_iso_in_degree(f, 1)
