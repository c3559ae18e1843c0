import random

from collapsekit.complex import SimplicialComplex
from collapsekit.corpus import GS32_FACETS
from collapsekit.iso import are_isomorphic, automorphisms, canonical_form, canonical_key, contains_subcomplex

S = SimplicialComplex.from_facets


def test_reverse_relabel_same_form(gs32):
    R = gs32.relabel({v: 7 - v for v in range(8)})
    assert canonical_form(R)[0] == canonical_form(gs32)[0]


def test_canonical_form_relabels_to_zero_based():
    K = SimplicialComplex.simplex_boundary(3).relabel({0: 5, 1: 6, 2: 7, 3: 8})
    form, pi = canonical_form(K)
    assert form == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert K.relabel(pi) == S(form)


def test_sphere_and_ball_differ(gs32, ball):
    assert canonical_form(gs32)[0] != canonical_form(ball)[0]
    assert canonical_key(gs32) != canonical_key(ball)


def test_are_isomorphic(gs32):
    pi = are_isomorphic(gs32, gs32)
    assert pi == {v: v for v in range(8)}
    perm = list(range(8))
    random.Random(3).shuffle(perm)
    R = gs32.relabel(dict(enumerate(perm)))
    found = are_isomorphic(gs32, R)
    assert found is not None and gs32.relabel(found) == R


def test_modified_list_is_not_isomorphic(gs32):
    facets = [f if f != (0, 1, 2, 4) else (0, 1, 2, 5) for f in GS32_FACETS]
    assert are_isomorphic(gs32, S(facets)) is None


def test_contains_subcomplex(gs32, ball, dunce):
    for host in (gs32, ball):
        pi = contains_subcomplex(host, dunce)
        assert pi is not None
        assert dunce.relabel(pi).is_subcomplex_of(host)
    assert contains_subcomplex(SimplicialComplex.simplex_boundary(3), dunce) is None


def test_automorphism_group_orders(dunce):
    assert len(automorphisms(SimplicialComplex.simplex_boundary(3))) == 24
    assert len(automorphisms(S([[0, 1]]))) == 2
    # computed by exhaustive search over all 8! permutations
    assert len(automorphisms(dunce)) == 1


def test_automorphisms_are_automorphisms(gs32):
    for pi in automorphisms(gs32):
        assert gs32.relabel(pi) == gs32
