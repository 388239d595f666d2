import pytest
from hypothesis import given, strategies as st

from orbikit.algebra import cyclic_group, groups_isomorphic, homology, symmetric_group
from orbikit.borel import classifying_space
from orbikit.errors import (
    BoundExceeded,
    InfiniteOrUnresolvedPi1,
    NoSuchVertex,
    TruncationTooLow,
)
from orbikit.fundamental import (
    ORDER_INFINITE,
    GroupPresentation,
    canonical_relator,
    coset_enumerate,
    cyclic_reduce,
    edge_path_data,
    evaluate_word,
    free_reduce,
    fundamental_group,
    group_from_cosets,
    induced_pi1_hom,
    invert,
    pi1_presentation,
    tietze_simplify,
    universal_cover,
    verify_presentation_witness,
)
from orbikit.algebra.homology import reduced_homology
from orbikit.simplicial import identity_map, minimal_circle, point

from spaces import spaces

words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12)


@given(words)
def test_free_reduce_is_idempotent_and_reduced(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(a != -b for a, b in zip(r, r[1:]))


@given(words)
def test_word_times_inverse_reduces_to_empty(w):
    assert free_reduce(tuple(w) + invert(w)) == ()


@given(words, st.integers(0, 11))
def test_canonical_relator_is_invariant(w, k):
    w = cyclic_reduce(w)
    if not w:
        return
    k %= len(w)
    rot = w[k:] + w[:k]
    assert canonical_relator(rot) == canonical_relator(w)
    assert canonical_relator(invert(w)) == canonical_relator(w)


def test_parse_and_print_presentation():
    P = GroupPresentation.parse(2, ["aa", "bbb", "abab"])
    assert P.relators == ((1, 1), (2, 2, 2), (1, 2, 1, 2))
    assert str(P) == "⟨a, b | aa, bbb, abab⟩"
    assert str(GroupPresentation.parse(1, ["aA"]).abelianization()) == "ℤ"


@pytest.mark.parametrize("rels,ngens,order", [
    (["aa", "bbb", "ababab"], 2, 12),
    (["aa", "bbb", "abab"], 2, 6),
    (["aaaaa"], 1, 5),
    (["aa", "bb", "abAB"], 2, 4),
    (["aaa", "bb", "abab"], 2, 6),
    (["a", "b"], 2, 1),
    (["aaaa", "bb", "abab"], 2, 8),
])
def test_coset_enumeration_orders(rels, ngens, order):
    P = GroupPresentation.parse(ngens, rels)
    ct = coset_enumerate(P)
    assert ct.order == order
    G, images = group_from_cosets(ct)
    assert G.order == order
    assert verify_presentation_witness(P, G, images)


def test_coset_enumeration_respects_bound():
    with pytest.raises(BoundExceeded):
        coset_enumerate(GroupPresentation.parse(2, ["aa", "bbb"]), max_cosets=100)


def test_coset_group_of_s3_presentation_is_s3():
    G, _ = group_from_cosets(coset_enumerate(GroupPresentation.parse(2, ["aa", "bbb", "abab"])))
    assert groups_isomorphic(G, symmetric_group(3))[0]


def test_tietze_eliminates_generator():
    P = GroupPresentation.parse(2, ["ab", "aaa"])
    r = tietze_simplify(P)
    assert r.presentation.ngens == 1
    assert coset_enumerate(r.presentation).order == 3


# ⟨a, b | a^p, b^q, (ab)^r⟩ is finite for these triples; extra relators only shrink it
finite_triples = st.sampled_from([(2, 2, 2), (2, 2, 3), (2, 2, 5), (2, 3, 3), (2, 3, 4), (2, 3, 5), (1, 4, 3), (3, 3, 1)])
presentations = st.tuples(finite_triples, st.lists(words, max_size=2)).map(
    lambda t: GroupPresentation(2, (
        (1,) * t[0][0], (2,) * t[0][1], (1, 2) * t[0][2],
        *[free_reduce(w) for w in t[1] if free_reduce(w)],
    ))
)


@given(presentations)
def test_tietze_preserves_order_and_abelianization(P):
    r = tietze_simplify(P)
    assert r.presentation.abelianization() == P.abelianization()
    assert coset_enumerate(r.presentation).order == coset_enumerate(P).order


@given(presentations)
def test_tietze_substitutions_give_a_witness(P):
    r = tietze_simplify(P)
    G, gen_images = group_from_cosets(coset_enumerate(r.presentation))
    images = tuple(evaluate_word(G, w, gen_images) for w in r.substitutions)
    assert verify_presentation_witness(P, G, images)


@pytest.mark.parametrize("name,X,order,h1", spaces(), ids=[s[0] for s in spaces()])
def test_pi1_of_test_spaces(name, X, order, h1):
    r = fundamental_group(X)
    assert str(r.abelianization) == h1
    assert r.abelianization == homology(X, [1])[0]
    if order is None:
        assert r.order == ORDER_INFINITE
    else:
        assert r.order == order
        assert r.group.order == order


def test_pi1_of_bs3_is_s3():
    r = fundamental_group(classifying_space(symmetric_group(3), 3), identify=True)
    assert groups_isomorphic(r.group, symmetric_group(3))[0]


def test_pi1_needs_two_cells():
    with pytest.raises(TruncationTooLow):
        fundamental_group(point(1))
    with pytest.raises(NoSuchVertex):
        edge_path_data(point(2), 3)


def test_pi1_presentation_of_circle():
    P = pi1_presentation(minimal_circle(2))
    assert P.ngens == 1 and P.relators == ()


@pytest.mark.parametrize("name,X,order,h1", [s for s in spaces() if s[2] is not None],
                         ids=[s[0] for s in spaces() if s[2] is not None])
def test_universal_cover_properties(name, X, order, h1):
    cov = universal_cover(X)
    assert cov.cover.counts() == [order * c for c in X.counts()]
    assert cov.deck_action.is_free()
    assert cov.deck_group.order == order
    assert all(g.is_trivial for g in reduced_homology(cov.cover, [0, 1]))


def test_cover_of_bz2_is_eg_through_degree_two():
    B = classifying_space(cyclic_group(2), 4)
    cov = universal_cover(B)
    assert cov.cover.counts() == [2, 2, 2, 2, 2]
    assert all(g.is_trivial for g in reduced_homology(cov.cover))


def test_cover_of_circle_is_refused():
    with pytest.raises(InfiniteOrUnresolvedPi1):
        universal_cover(minimal_circle(2))


def test_induced_hom_of_identity_is_identity():
    X = classifying_space(cyclic_group(3), 3)
    h = induced_pi1_hom(identity_map(X))
    assert h.is_bijective() and h.is_homomorphism()
