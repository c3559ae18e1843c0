import pytest

from collapsekit.collapse import (
    CollapseCertificate, InvalidStep, collapse_to_point, collapses_onto, elementary_collapse,
    find_stuck_cores, free_faces, greedy_collapse, greedy_equals_search_dim2, is_extendably_collapsible,
    normalize_certificate, replay_certificate, stuck_states,
)
from collapsekit.complex import ComplexError, SimplicialComplex, product_with_interval, bottom_copy

S = SimplicialComplex.from_facets
TREE = S([[0, 1], [1, 2], [1, 3], [3, 4], [4, 5]])


def test_free_faces(dunce, ball, tet):
    assert free_faces(dunce) == []
    assert ((1, 3, 4), (0, 1, 3, 4)) in free_faces(ball)
    assert free_faces(tet) == [(t, (0, 1, 2, 3)) for t in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]]


def test_elementary_collapse(tet):
    K = elementary_collapse(tet, ((1, 2, 3), (0, 1, 2, 3)))
    assert len(K) == 13
    assert K.euler_characteristic() == tet.euler_characteristic()
    with pytest.raises(InvalidStep):
        elementary_collapse(K, ((1, 2, 3), (0, 1, 2, 3)))
    with pytest.raises(InvalidStep):
        elementary_collapse(K, ((0, 1), (0, 1, 2)))


def test_collapse_to_point_verdicts(ball, dunce):
    out = collapse_to_point(ball)
    assert out.yes
    end = replay_certificate(ball, out.witness)
    assert end.valid and end.complex.f_vector() == (1,)
    assert collapse_to_point(dunce).no


def test_collapses_onto(ball, dunce):
    out = collapses_onto(ball, dunce)
    assert out.yes and replay_certificate(ball, out.witness).complex == dunce
    same = collapses_onto(dunce, dunce)
    assert same.yes and len(same.witness) == 0
    with pytest.raises(ComplexError):
        collapses_onto(dunce, S([[0, 1, 2, 3]]))


def test_product_collapses(dunce):
    order = dunce.vertices
    P = product_with_interval(dunce, order)
    assert collapse_to_point(P, strategy="greedy", seed=0, budget=2000).yes
    out = collapses_onto(P, bottom_copy(dunce, order), strategy="greedy", seed=0, budget=2000)
    assert out.yes


def test_replay_reports_first_bad_step(ball):
    cert = collapse_to_point(ball).witness
    steps = list(cert)
    bad = CollapseCertificate(tuple(steps[:3] + [steps[0]] + steps[3:]))
    res = replay_certificate(ball, bad)
    assert not res.valid and res.index == 3


def test_swapping_independent_steps(tet):
    cert = CollapseCertificate.of([((1, 2, 3), (0, 1, 2, 3)), ((2, 3), (1, 2, 3)),
                                   ((1, 3), (0, 1, 3)), ((0, 2), (0, 2, 3))])
    swapped = CollapseCertificate((cert[0], cert[2], cert[1], cert[3]))
    assert replay_certificate(tet, cert).complex == replay_certificate(tet, swapped).complex


def test_normalize(ball):
    cert = collapse_to_point(ball).witness
    norm = normalize_certificate(ball, cert)
    assert replay_certificate(ball, norm).complex == replay_certificate(ball, cert).complex
    dims = [len(s.coface) for s in norm]
    assert dims == sorted(dims, reverse=True)
    assert normalize_certificate(ball, norm) == norm
    assert len(normalize_certificate(ball, CollapseCertificate())) == 0


def test_stuck_cores(dunce, tet, ball):
    cores, status = find_stuck_cores(dunce, mode="exhaustive")
    assert [c.complex for c in cores] == [dunce]
    cores, _ = find_stuck_cores(tet, mode="sampled", runs=200)
    assert [c.complex.f_vector() for c in cores] == [(1,)]
    cores, status = find_stuck_cores(ball, mode="exhaustive")
    assert status.value == "yes"
    assert cores[0].complex.f_vector() == (1,)
    assert any(_is_two_dim_core(c.complex) for c in cores)
    for c in cores:
        assert replay_certificate(ball, c.certificate).complex == c.complex


def _is_two_dim_core(C):
    return C.dim == 2 and C.num_vertices == 8 and C.euler_characteristic() == 1


def test_sampled_stuck_cores_of_ball(ball):
    # Ten thousand seeded random greedy runs should meet both the point and
    # an 8-vertex two-dimensional core.
    cores, _ = find_stuck_cores(ball, mode="sampled", runs=10**4, seed=0)
    for c in cores:
        assert replay_certificate(ball, c.certificate).complex == c.complex
    assert any(c.complex.f_vector() == (1,) for c in cores)
    assert any(_is_two_dim_core(c.complex) for c in cores)


def test_stuck_states_of_ball_are_point_or_dunce(ball, dunce):
    states, status = stuck_states(ball)
    assert status.value == "yes"
    nonpoints = [s.complex for s in states if len(s.complex) > 1]
    assert dunce in nonpoints
    for C in nonpoints:
        assert C.dim == 2 and free_faces(C) == [] and C.euler_characteristic() == 1


def test_extendable_collapsibility(ball, tet):
    out = is_extendably_collapsible(ball)
    assert out.no and out.witness.complex.dim == 2
    assert replay_certificate(ball, out.witness.certificate).complex == out.witness.complex
    assert is_extendably_collapsible(tet).yes
    assert is_extendably_collapsible(TREE).yes


def test_greedy_collapse_returns_replayable(ball):
    cert, end = greedy_collapse(ball, seed=5)
    assert replay_certificate(ball, cert).complex == end
    assert free_faces(end) == []


def test_greedy_equals_search(dunce):
    assert greedy_equals_search_dim2(dunce)
    assert greedy_equals_search_dim2(TREE)
    assert greedy_equals_search_dim2(S([[0, 1, 2], [1, 2, 3], [2, 3, 4]]))
    with pytest.raises(ComplexError):
        greedy_equals_search_dim2(SimplicialComplex.simplex(3))


def test_budget_gives_indeterminate(ball):
    assert collapse_to_point(ball, budget=1).indeterminate
