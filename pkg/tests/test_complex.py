import pytest

from collapsekit.complex import (
    ComplexError, ManifoldType, SimplicialComplex, bottom_copy, classify_small_manifold,
    product_with_interval,
)
from collapsekit.corpus import RED_CENTRAL

S = SimplicialComplex.from_facets


def test_closure_of_tetrahedron():
    assert S([[0, 1, 2, 3]]).f_vector() == (4, 6, 4, 1)


def test_gs32_shape(gs32):
    assert len(gs32.facets) == 19
    assert gs32.num_vertices == 8
    assert gs32.f_vector() == (8, 27, 38, 19)
    assert gs32.euler_characteristic() == 0


def test_only_missing_edge_is_23(gs32):
    edges = {e for e in gs32.faces_of_dim(1)}
    missing = [(a, b) for a in range(8) for b in range(a + 1, 8) if (1 << a | 1 << b) not in edges]
    assert missing == [(2, 3)]


def test_redundant_input_is_pruned():
    K = S([[0, 1], [1], [0, 1]])
    assert K.facets == [(0, 1)]


def test_duplicate_vertex_rejected():
    with pytest.raises(ComplexError):
        S([[0, 0, 1]])


@pytest.mark.parametrize("K, fv, chi", [
    (S([[0]]), (1,), 1),
    (SimplicialComplex.simplex_boundary(3), (4, 6, 4), 2),
])
def test_f_vector_and_euler(K, fv, chi):
    assert K.f_vector() == fv
    assert K.euler_characteristic() == chi


def test_links(gs32, tet):
    L = gs32.link([0])
    assert L.f_vector() == (7, 15, 10)
    assert L.euler_characteristic() == 2
    assert gs32.link([0, 1, 3, 4]).is_empty()
    assert tet.link([0]) == S([[1, 2, 3]])
    with pytest.raises(ComplexError):
        gs32.link([2, 3])


def test_star_contains_link_cone(gs32):
    st = gs32.star([0])
    assert all(0 in F for F in st.facets)


def test_boundary_complex(gs32, ball, tet):
    assert tet.boundary_complex().f_vector() == (4, 6, 4)
    assert gs32.boundary_complex().is_empty()
    bd = ball.boundary_complex()
    assert bd.euler_characteristic() == 2
    assert classify_small_manifold(bd) is ManifoldType.SPHERE2
    with pytest.raises(ComplexError):
        S([[0, 1, 2], [2, 3]]).boundary_complex()


def test_dual_graph(gs32, tet):
    g = gs32.dual_graph()
    assert len(g.nodes) == 19 and len(g.edges) == 38 and g.is_connected()
    assert len(tet.dual_graph().edges) == 0
    two = S([[0, 1, 2, 3], [0, 1, 2, 4]]).dual_graph()
    assert len(two.nodes) == 2 and len(two.edges) == 1


def test_classify(gs32, ball):
    assert classify_small_manifold(SimplicialComplex.simplex_boundary(3)) is ManifoldType.SPHERE2
    assert classify_small_manifold(gs32) is ManifoldType.MANIFOLD3_CLOSED
    assert classify_small_manifold(ball) is ManifoldType.MANIFOLD3_WITH_BOUNDARY
    assert classify_small_manifold(S([[0, 1, 2]])) is ManifoldType.BALL2
    # two triangles meeting in a vertex
    assert classify_small_manifold(S([[0, 1, 2], [0, 3, 4]])) is ManifoldType.OTHER


def test_skeleton(gs32, tet):
    sk = gs32.skeleton(2)
    assert sk.is_pure() and len(sk.faces_of_dim(2)) == 38
    assert gs32.skeleton(3) == gs32
    assert tet.skeleton(0).f_vector() == (4,)


def test_remove_facets_semantics(gs32, tet):
    opened = gs32.remove_facets(RED_CENTRAL, "open")
    generated = gs32.remove_facets(RED_CENTRAL, "generated")
    assert len(generated.facet_masks & gs32.faces_of_dim(3)) == 12
    assert opened.f_vector() == (8, 27, 38, 12)
    assert generated.f_vector() == (8, 25, 30, 12)
    assert gs32.remove_facets(gs32.facets, "open") == gs32.skeleton(2)
    assert tet.remove_facets([(0, 1, 2, 3)]) == SimplicialComplex.simplex_boundary(3)
    with pytest.raises(ComplexError):
        gs32.remove_facets([(0, 1, 2)])


def test_product_with_interval(dunce):
    assert len(product_with_interval(S([[0, 1]]), [0, 1]).facets) == 2
    assert len(product_with_interval(S([[0, 1, 2]]), [0, 1, 2]).facets) == 3
    P = product_with_interval(dunce, dunce.vertices)
    assert P.num_vertices == 16 and P.f_vector()[3] == 51 and P.is_pure()
    assert bottom_copy(dunce, dunce.vertices).is_subcomplex_of(P)
    with pytest.raises(ComplexError):
        product_with_interval(dunce, [0, 1, 2])


def test_relabel_and_equality(gs32):
    pi = {v: 7 - v for v in range(8)}
    R = gs32.relabel(pi)
    assert R != gs32 and R.relabel(pi) == gs32
    assert hash(R.relabel(pi)) == hash(gs32)


def test_content_hash_stable(gs32):
    assert gs32.content_hash() == SimplicialComplex.from_facets(reversed(gs32.facets)).content_hash()
