import pytest

from collapsekit.collapse import collapse_to_point, find_stuck_cores, replay_certificate
from collapsekit.complex import ComplexError, SimplicialComplex
from collapsekit.iso import are_isomorphic
from collapsekit.trees import (
    DualSpanningTree, facet_independence_experiment, find_tree_avoiding, spanning_trees, tree_complex,
    tree_directed_collapse,
)

S = SimplicialComplex.from_facets
TWO_TETS = S([[0, 1, 2, 3], [1, 2, 3, 4]])


def test_two_tetrahedra():
    trees = list(spanning_trees(TWO_TETS))
    assert trees == [DualSpanningTree(((1, 2, 3),))]
    KT = tree_complex(TWO_TETS, trees[0])
    assert len(KT.faces_of_dim(2)) == 6 and KT.dim == 2
    cert = tree_directed_collapse(TWO_TETS, (0, 1, 2, 3), trees[0])
    start = TWO_TETS.delete_open_facets([(0, 1, 2, 3)])
    assert replay_certificate(start, cert).complex == KT


def test_tree_counts():
    assert len(list(spanning_trees(SimplicialComplex.simplex_boundary(4)))) == 125


def test_gs32_trees(gs32):
    trees = list(spanning_trees(gs32, mode="sample", samples=10, seed=4))
    assert trees == list(spanning_trees(gs32, mode="sample", samples=10, seed=4))
    for T in trees:
        assert len(T) == 18
        KT = tree_complex(gs32, T)
        assert len(KT.faces_of_dim(2)) == 20
        assert gs32.skeleton(1).is_subcomplex_of(KT)


def test_tree_collapse_independent_of_root(gs32):
    T = next(spanning_trees(gs32, mode="sample", samples=1, seed=1))
    KT = tree_complex(gs32, T)
    for F in gs32.facets:
        cert = tree_directed_collapse(gs32, F, T)
        assert replay_certificate(gs32.delete_open_facets([F]), cert).complex == KT


def test_tree_validation(gs32):
    with pytest.raises(ComplexError):
        tree_directed_collapse(gs32, gs32.facets[0], DualSpanningTree.of([(0, 1, 3)]))


def test_some_tree_gives_collapsible_KT(gs32):
    trees = spanning_trees(gs32, mode="sample", samples=20, seed=0)
    assert any(collapse_to_point(tree_complex(gs32, T)).yes for T in trees)


def test_facet_independence(gs32):
    rep = facet_independence_experiment(gs32)
    assert len(rep.verdicts) == 19 and rep.constant and rep.verdicts[0].value == "yes"
    rep = facet_independence_experiment(SimplicialComplex.simplex_boundary(4))
    assert len(rep.verdicts) == 5 and rep.constant and not rep.flagged


def test_tree_avoiding_dunce(gs32, dunce):
    T = find_tree_avoiding(gs32, dunce.facets)
    assert T is not None
    KT = tree_complex(gs32, T)
    assert dunce.is_subcomplex_of(KT)
    cores, status = find_stuck_cores(KT, mode="exhaustive")
    assert status.value == "yes"
    assert any(are_isomorphic(c.complex, dunce) for c in cores)
    assert find_tree_avoiding(gs32, []) is not None
    all_ridges = [tuple(v for v in range(8) if r >> v & 1) for r in gs32.faces_of_dim(2)]
    assert find_tree_avoiding(gs32, all_ridges) is None
