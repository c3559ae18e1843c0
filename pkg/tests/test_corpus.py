import pytest

from collapsekit import corpus as cp
from collapsekit.collapse import free_faces
from collapsekit.formats import read_complex
from collapsekit.homology import homology_integral


def test_gs32_listing(gs32):
    assert gs32.facets == sorted(cp.GS32_FACETS)
    assert len(set(cp.RED_CONE) | set(cp.BLUE_CONE)) == 19


def test_ball_is_sphere_minus_central_red(gs32, ball):
    assert len(ball.facets) == 12
    assert set(ball.facets) == set(gs32.facets) - set(cp.RED_CENTRAL)


def test_dunce_hat_shape(dunce):
    assert dunce.is_pure() and dunce.dim == 2
    assert dunce.num_vertices == 8 and dunce.euler_characteristic() == 1
    assert free_faces(dunce) == []
    assert homology_integral(dunce).is_trivial()


def test_dunce_hat_regenerates(dunce):
    assert cp.derive_dunce_hat() == dunce


def test_dunce_hat_is_cone_interface(dunce):
    assert cp.cone_interface() == dunce


def test_named_entries():
    assert cp.corpus("simplex_3").f_vector() == (4, 6, 4, 1)
    assert cp.corpus("simplex_boundary_4").f_vector() == (5, 10, 10, 5)
    assert len(cp.corpus("moment_curve_8").facets) == 20
    with pytest.raises(KeyError, match="available"):
        cp.corpus("nope")


@pytest.mark.parametrize("name", ["gs_32", "ball_B", "dunce_hat_D", "rp2_6"])
def test_shipped_files_match(name):
    assert read_complex(cp.DATA_DIR / f"{name}.txt") == cp.corpus(name)


def test_gs32_hash_is_stable(gs32):
    assert gs32.content_hash() == cp.gs_32().content_hash()
    assert gs32.content_hash() == read_complex(cp.DATA_DIR / "gs_32.txt").content_hash()
