"""Randomized invariants, driven by hypothesis."""
from fractions import Fraction
from itertools import combinations

from hypothesis import HealthCheck, given, settings, strategies as st

from collapsekit.collapse import (
    collapse_to_point, elementary_collapse, free_faces, greedy_collapse, greedy_equals_search_dim2,
    normalize_certificate, replay_certificate,
)
from collapsekit.complex import SimplicialComplex
from collapsekit.corpus import dunce_hat_D, gs_32
from collapsekit.formats import parse_facets, serialize_facets
from collapsekit.geometry import GeometricComplex, brute_force_facets, gale_evenness_facets, verify_embedding
from collapsekit.homology import homology_integral, homology_z2
from collapsekit.iso import are_isomorphic, canonical_form, contains_subcomplex
from collapsekit.shelling import is_shellable, shelling_to_collapse

TRIANGLES = list(combinations(range(7), 3))
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def two_complexes(draw, max_triangles=10):
    tris = draw(st.lists(st.sampled_from(TRIANGLES), min_size=1, max_size=max_triangles, unique=True))
    return SimplicialComplex.from_facets(tris)


@st.composite
def relabelings(draw, K):
    targets = draw(st.permutations(range(20)))
    return {v: targets[i] for i, v in enumerate(K.vertices)}


def _padded(b, n=4):
    return tuple(b) + (0,) * (n - len(b))


@SETTINGS
@given(two_complexes(), st.data())
def test_canonical_form_is_relabeling_invariant(K, data):
    pi = data.draw(relabelings(K))
    assert canonical_form(K.relabel(pi))[0] == canonical_form(K)[0]


@SETTINGS
@given(st.data())
def test_corpus_canonical_forms_invariant(data):
    for K in (gs_32(), dunce_hat_D()):
        pi = data.draw(relabelings(K))
        assert canonical_form(K.relabel(pi))[0] == canonical_form(K)[0]


@SETTINGS
@given(two_complexes(), st.data())
def test_isomorphism_found_for_relabeled_copy(K, data):
    pi = data.draw(relabelings(K))
    R = K.relabel(pi)
    found = are_isomorphic(K, R)
    assert found is not None and K.relabel(found) == R
    assert contains_subcomplex(R, K) is not None


@SETTINGS
@given(two_complexes())
def test_facet_file_round_trip(K):
    text = serialize_facets(K.facets)
    assert SimplicialComplex.from_facets(parse_facets(text)) == K
    assert serialize_facets(parse_facets(text)) == text


@SETTINGS
@given(two_complexes(), st.integers(0, 2**32))
def test_collapses_preserve_homotopy_invariants(K, seed):
    cert, end = greedy_collapse(K, seed=seed, prefer_top=False)
    assert end.euler_characteristic() == K.euler_characteristic()
    assert _padded(homology_z2(end)) == _padded(homology_z2(K))
    step_by_step = K
    for step in cert:
        step_by_step = elementary_collapse(step_by_step, step)
    assert step_by_step == end
    assert free_faces(end) == []


@SETTINGS
@given(two_complexes(), st.integers(0, 2**32))
def test_normalized_certificates_keep_endpoints(K, seed):
    cert, end = greedy_collapse(K, seed=seed, prefer_top=False)
    norm = normalize_certificate(K, cert)
    assert replay_certificate(K, norm).complex == end
    assert sorted(norm.steps, key=repr) == sorted(cert.steps, key=repr)


@SETTINGS
@given(two_complexes(max_triangles=8))
def test_greedy_decides_dimension_two(K):
    assert greedy_equals_search_dim2(K)


@SETTINGS
@given(two_complexes())
def test_z2_and_integral_homology_agree_up_to_torsion(K):
    hz = homology_integral(K)
    h2 = homology_z2(K)
    for d, b in enumerate(hz.betti):
        extra = sum(1 for x in hz.torsion[d] if x % 2 == 0)
        extra += sum(1 for x in hz.torsion[d - 1] if x % 2 == 0) if d else 0
        assert h2[d] == b + extra
    unreduced = homology_integral(K, reduced=False).betti
    assert sum((-1) ** d * b for d, b in enumerate(unreduced)) == K.euler_characteristic()


@SETTINGS
@given(two_complexes(max_triangles=7))
def test_shellings_of_contractible_complexes_give_collapses(K):
    out = is_shellable(K)
    if not out.yes or not homology_integral(K).is_trivial():
        return
    end = replay_certificate(K, shelling_to_collapse(K, out.witness))
    assert end.valid and end.complex.f_vector() == (1,)
    assert collapse_to_point(K).yes


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=6, max_size=7, unique=True))
def test_cyclic_polytope_combinatorics(ts):
    ts = sorted(ts)
    pts = [tuple(Fraction(t**k) for k in range(1, 5)) for t in ts]
    assert sorted(brute_force_facets(pts)) == gale_evenness_facets(len(ts))


@SETTINGS
@given(st.tuples(*[st.integers(-5, 5)] * 9).filter(
    lambda m: (m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
               + m[2] * (m[3] * m[7] - m[4] * m[6])) != 0),
    st.tuples(*[st.integers(-9, 9)] * 3))
def test_embedding_check_is_affine_invariant(m, shift):
    def f(p):
        return tuple(sum(Fraction(m[3 * r + c]) * p[c] for c in range(3)) + shift[r] for r in range(3))

    base = {0: (0, 0, 0), 1: (2, 0, 0), 2: (0, 2, 0), 3: (0, 0, 2), 4: (1, 1, -1), 5: (1, 1, 1)}
    base = {v: tuple(Fraction(x) for x in p) for v, p in base.items()}
    for tris, expected in (([(0, 1, 2), (0, 1, 3)], True), ([(0, 1, 2), (3, 4, 5)], False)):
        G = GeometricComplex({v: f(p) for v, p in base.items()}, tris)
        assert bool(verify_embedding(G)) is expected
