"""Built-in complexes: the 8-vertex sphere, the ball and the dunce hat.

``gs_32`` lists the nineteen tetrahedra in the order they are assembled:
the red solid cone (apex piece, bottom piece, central piece) followed by
the blue one.  ``ball_B`` drops the central red piece.  ``dunce_hat_D`` is
the frozen output of :func:`derive_dunce_hat`; a regeneration test keeps the
two in sync.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .complex import SimplicialComplex


def _tets(*words: str) -> list[tuple[int, ...]]:
    return [tuple(int(c) for c in w) for w in words]


RED_APEX = _tets("0134")
RED_BOTTOM = _tets("0126", "0167")
RED_CENTRAL = _tets("0257", "0567", "1245", "1345", "2457", "3456", "4567")
BLUE_APEX = _tets("0256")
BLUE_CENTRAL = _tets("0137", "0347", "1256", "1356", "1367", "3467")
BLUE_BOTTOM = _tets("0124", "0247")

RED_CONE = RED_APEX + RED_BOTTOM + RED_CENTRAL
BLUE_CONE = BLUE_APEX + BLUE_CENTRAL + BLUE_BOTTOM
GS32_FACETS = RED_CONE + BLUE_CONE

# output of derive_dunce_hat(), in the labels of gs_32
DUNCE_HAT_FACETS = [
    (0, 1, 3), (0, 1, 4), (0, 1, 7), (0, 2, 5), (0, 2, 6), (0, 2, 7), (0, 3, 4),
    (0, 5, 6), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 5), (1, 6, 7), (2, 4, 7),
    (3, 4, 6), (3, 5, 6), (4, 6, 7),
]

RP2_FACETS = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
]

DATA_DIR = Path(__file__).resolve().parents[2] / "data"


def gs_32() -> SimplicialComplex:
    return SimplicialComplex.from_facets(GS32_FACETS)


def ball_B() -> SimplicialComplex:
    # generated subcomplex: the internal triangles of the red central piece go too
    return gs_32().delete_facets_generated(RED_CENTRAL)


def dunce_hat_D() -> SimplicialComplex:
    return SimplicialComplex.from_facets(DUNCE_HAT_FACETS)


def rp2_6() -> SimplicialComplex:
    return SimplicialComplex.from_facets(RP2_FACETS)


def moment_curve_points(n: int = 8, start: int = 1) -> list[tuple[Fraction, ...]]:
    return [tuple(Fraction(t**k) for k in range(1, 5)) for t in range(start, start + n)]


def cone_interface() -> SimplicialComplex:
    """Triangles shared by the red and blue solid cones, minus 012.

    An independent description of the dunce hat, used to cross-check the
    stuck-core derivation.
    """
    red = SimplicialComplex.from_facets(RED_CONE)
    blue = SimplicialComplex.from_facets(BLUE_CONE)
    shared = red.intersection(blue).faces_of_dim(2) - {0b111}
    return SimplicialComplex(shared)


_NAMED = {
    "gs_32": gs_32,
    "ball_B": ball_B,
    "dunce_hat_D": dunce_hat_D,
    "rp2_6": rp2_6,
}


def available() -> list[str]:
    return sorted(_NAMED) + ["simplex_<k>", "simplex_boundary_<k>", "moment_curve_<n>"]


def corpus(name: str) -> SimplicialComplex:
    if name in _NAMED:
        return _NAMED[name]()
    for prefix, build in (("simplex_boundary_", SimplicialComplex.simplex_boundary),
                          ("simplex_", SimplicialComplex.simplex)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return build(int(name[len(prefix):]))
    if name.startswith("moment_curve_") and name[13:].isdigit():
        from .geometry import brute_force_facets

        return SimplicialComplex.from_facets(brute_force_facets(moment_curve_points(int(name[13:]))))
    raise KeyError(f"unknown corpus entry {name!r}; available: {', '.join(available())}")


def derive_dunce_hat(budget: int | None = None) -> SimplicialComplex:
    """Recover the dunce hat as a stuck core of ``ball_B``.

    Lists every subcomplex ``ball_B`` collapses onto that has no free
    faces, keeps the 2-dimensional ones with trivial reduced integral
    homology sitting in the 2-skeleton of ``gs_32``, and returns the
    smallest, ties broken by the sorted facet list.
    """
    from .collapse import free_faces, stuck_states
    from .homology import homology_integral
    from .search import Verdict

    B = ball_B()
    skel = gs_32().skeleton(2)
    cores, status = stuck_states(B, budget)
    if status is not Verdict.YES:
        raise RuntimeError("stuck-core search ran out of budget")
    qualifying = [
        c.complex for c in cores
        if c.complex.dim == 2 and c.complex.is_pure() and not free_faces(c.complex)
        and homology_integral(c.complex).is_trivial() and c.complex.is_subcomplex_of(skel)
    ]
    if not qualifying:
        raise RuntimeError("ball_B has no 2-dimensional acyclic stuck core")
    return min(qualifying, key=lambda C: (len(C), C.facets))


def write_data_files(directory: Path = DATA_DIR) -> list[Path]:
    from .formats import write_complex

    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in sorted(_NAMED):
        path = directory / f"{name}.txt"
        write_complex(path, corpus(name))
        out.append(path)
    return out
