from fractions import Fraction

import pytest

from collapsekit.collapse import CollapseCertificate
from collapsekit.formats import (
    ParseError, parse_census_index, parse_certificate, parse_coordinates, parse_facets, parse_off,
    parse_shelling, parse_tree, serialize_census_index, serialize_certificate, serialize_coordinates,
    serialize_facets, serialize_off, serialize_shelling, serialize_tree,
)


def test_facet_round_trip(gs32):
    text = serialize_facets(gs32.facets)
    assert serialize_facets(parse_facets(text)) == text


@pytest.mark.parametrize("bad", ["0 0 1 2\n", "", "0 x 2\n", "0  1\n", "0 1 2\r\n", "-1 2\n"])
def test_facet_rejections(bad):
    with pytest.raises(ParseError):
        parse_facets(bad)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as e:
        parse_facets("0 1 2\n3 3 4\n")
    assert e.value.line == 2


def test_comments_allowed():
    assert parse_facets("# hello\n0 1 2\n") == [(0, 1, 2)]


def test_certificate_round_trip():
    cert = CollapseCertificate.of([((1, 2, 3), (0, 1, 2, 3)), ((0, 1), (0, 1, 2))])
    text = serialize_certificate(cert, "a" * 64, "b" * 64)
    parsed = parse_certificate(text)
    assert [tuple(s) for s in parsed.steps] == [tuple(s) for s in cert]
    assert parsed.start_hash == "a" * 64 and parsed.end_hash == "b" * 64
    assert serialize_certificate(parsed.steps, parsed.start_hash, parsed.end_hash) == text


def test_shelling_and_tree_round_trip(gs32):
    order = gs32.facets
    h, parsed = parse_shelling(serialize_shelling(order, gs32.content_hash()))
    assert parsed == order and h == gs32.content_hash()
    ridges = [(0, 1, 2), (1, 2, 3)]
    assert parse_tree(serialize_tree(ridges)) == ridges


def test_census_index_round_trip():
    rows = [("ab" * 32, (8, 27, 38, 19), ("closed_manifold",)), ("cd" * 32, (5, 10, 10, 5), ())]
    text = serialize_census_index(rows)
    assert sorted(parse_census_index(text)) == sorted(rows)
    assert serialize_census_index(parse_census_index(text)) == text


def test_coordinates_round_trip():
    pts = [(Fraction(1, 3), Fraction(-2), Fraction(0), Fraction(7, 5))]
    text = serialize_coordinates(pts)
    assert parse_coordinates(text) == pts
    with pytest.raises(ParseError):
        parse_coordinates("1/0 1/1 1/1 1/1\n")


def test_off_counts():
    text = serialize_off([(Fraction(0),) * 3, (Fraction(1), Fraction(0), Fraction(0)),
                          (Fraction(0), Fraction(1), Fraction(0))], [(0, 1, 2)], 3)
    assert text.splitlines()[1] == "3 1 3"
    pts, faces = parse_off(text)
    assert len(pts) == 3 and faces == [(0, 1, 2)]
