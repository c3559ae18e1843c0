import pytest

from collapsekit.complex import ManifoldType, SimplicialComplex, classify_small_manifold
from collapsekit.enumerate import (
    balls_oracle, census_containment, closed_3manifolds_oracle, enumerate_2spheres, enumerate_balls,
    enumerate_closed_3manifolds, search_balls_containing, write_census,
)
from collapsekit.formats import parse_census_index
from collapsekit.iso import are_isomorphic

S = SimplicialComplex.from_facets


@pytest.fixture(scope="module")
def census8():
    return list(enumerate_closed_3manifolds(8))


@pytest.mark.parametrize("n, count", [(4, 1), (5, 1), (6, 2), (7, 5)])
def test_two_sphere_counts(n, count):
    assert len(enumerate_2spheres(n)) == count


@pytest.mark.parametrize("n, count", [(5, 1), (6, 2), (7, 5)])
def test_small_census_matches_oracle(n, count):
    records = list(enumerate_closed_3manifolds(n))
    assert len(records) == count
    assert sorted(r.facets for r in records) == closed_3manifolds_oracle(n)


def test_five_vertex_census_is_simplex_boundary():
    (rec,) = enumerate_closed_3manifolds(5)
    assert rec.complex == SimplicialComplex.simplex_boundary(4)


def test_census_8(census8, gs32, dunce):
    assert len(census8) == 39
    assert all(classify_small_manifold(r.complex) is ManifoldType.MANIFOLD3_CLOSED for r in census8)
    hits = census_containment(census8, dunce)
    assert sorted(len(r.facets) for r in hits) == [19, 20, 20]
    (small,) = [r for r in hits if len(r.facets) == 19]
    assert are_isomorphic(small.complex, gs32) is not None
    assert len(census_containment(census8, S([[0, 1, 2]]))) == 39


def test_write_census(tmp_path, census8):
    index = write_census(tmp_path, census8)
    rows = parse_census_index(index.read_text())
    assert len(rows) == 39
    assert {h for h, _, _ in rows} == {r.hash for r in census8}


def test_bad_vertex_count():
    with pytest.raises(ValueError):
        list(enumerate_closed_3manifolds(9))


def test_ball_counts_match_oracle():
    assert len(enumerate_balls(4).balls) == 1
    for n in (5, 6):
        found = sorted(r.facets for r in enumerate_balls(n).balls)
        assert found == balls_oracle(n)


def test_search_balls_single_triangle():
    res = search_balls_containing(S([[0, 1, 2]]), 4, 1)
    assert [r.facets for r in res.balls] == [[(0, 1, 2, 3)]]


@pytest.mark.slow
def test_search_balls_containing_dunce(dunce, ball):
    assert search_balls_containing(dunce, 8, 11).balls == []
    res = search_balls_containing(dunce, 8, 12)
    assert len(res.balls) == 1 and res.verdict.value == "yes"
    assert are_isomorphic(res.balls[0].complex, ball) is not None
