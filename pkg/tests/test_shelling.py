import pytest

from collapsekit.collapse import collapse_to_point, replay_certificate
from collapsekit.complex import SimplicialComplex
from collapsekit.shelling import (
    InvalidShelling, check_shelling, collapse_start, is_constructible, is_extendably_shellable,
    is_shellable, shelling_to_collapse,
)

S = SimplicialComplex.from_facets
# A partial shelling of the ball that no remaining tetrahedron can continue
BALL_STUCK_PREFIX = [(1, 3, 5, 6), (1, 2, 5, 6), (0, 2, 5, 6), (0, 1, 2, 6), (0, 1, 2, 4), (0, 2, 4, 7)]


def test_shellable_verdicts(ball, dunce, gs32):
    for K in (ball, gs32):
        out = is_shellable(K)
        assert out.yes and check_shelling(K, out.witness) is None
        assert sorted(out.witness) == K.facets
    assert is_shellable(dunce).no


def test_check_shelling_flags_bad_prefix():
    K = S([[0, 1, 2], [2, 3, 4], [1, 2, 3]])
    assert check_shelling(K, [(0, 1, 2), (2, 3, 4), (1, 2, 3)]) == 1
    assert check_shelling(K, [(0, 1, 2), (1, 2, 3), (2, 3, 4)]) is None


def test_extendable_shelling_small(tet, dunce):
    assert is_extendably_shellable(tet).yes
    assert is_extendably_shellable(SimplicialComplex.simplex_boundary(3)).yes
    assert is_extendably_shellable(dunce).no


def test_ball_B_extendably_shellable(ball):
    assert is_extendably_shellable(ball).yes


def _joins_well(earlier, F):
    """Closure of F meets the closure of ``earlier`` in a pure (dim F - 1)-complex."""
    common = S([F]).intersection(S(earlier))
    return not common.is_empty() and common.is_pure() and common.dim == len(F) - 2


def test_ball_B_stuck_partial_shelling_is_genuine(ball):
    # Checked straight from the definition, without the search code: the
    # prefix is a partial shelling and no remaining tetrahedron extends it.
    for k in range(1, len(BALL_STUCK_PREFIX)):
        assert _joins_well(BALL_STUCK_PREFIX[:k], BALL_STUCK_PREFIX[k])
    rest = [F for F in ball.facets if F not in BALL_STUCK_PREFIX]
    assert len(rest) == 6
    assert not any(_joins_well(BALL_STUCK_PREFIX, F) for F in rest)


def test_extendable_shelling_witness_is_stuck(ball):
    out = is_extendably_shellable(ball)
    if out.no:
        prefix = out.witness
        for k in range(1, len(prefix)):
            assert _joins_well(prefix[:k], prefix[k])
        assert not any(_joins_well(prefix, F) for F in ball.facets if F not in prefix)


def test_shelling_to_collapse(ball, tet, gs32):
    order = is_shellable(ball).witness
    cert = shelling_to_collapse(ball, order)
    end = replay_certificate(ball, cert)
    assert end.valid and end.complex.f_vector() == (1,)

    cert = shelling_to_collapse(tet, tet.facets)
    assert len(cert) == 7
    assert replay_certificate(tet, cert).complex.f_vector() == (1,)

    order = is_shellable(gs32).witness
    start = collapse_start(gs32, order)
    assert start == gs32.delete_open_facets([order[-1]])
    end = replay_certificate(start, shelling_to_collapse(gs32, order))
    assert end.valid and end.complex.f_vector() == (1,)
    assert collapse_to_point(start).yes


def test_shelling_to_collapse_rejects_bad_order():
    K = S([[0, 1, 2], [2, 3, 4], [1, 2, 3]])
    with pytest.raises(InvalidShelling):
        shelling_to_collapse(K, [(0, 1, 2), (2, 3, 4), (1, 2, 3)])


def test_constructible(ball, dunce, tet):
    assert is_constructible(dunce).no
    assert is_constructible(ball).yes
    assert is_constructible(tet).yes
    assert is_constructible(S([[0, 1], [2, 3]])).no
    assert is_constructible(S([[0, 1], [1, 2]])).yes


def test_budget_limits(ball):
    assert is_shellable(ball, budget=1).indeterminate
