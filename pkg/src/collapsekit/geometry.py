"""Exact rational geometry for small 4-polytopes and their Schlegel diagrams.

Every predicate is a sign of an exact integer or Fraction determinant.
Floats appear only when OFF text is rendered.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .complex import SimplicialComplex
from .iso import are_isomorphic

Point = tuple[Fraction, ...]


class DegenerateError(ValueError):
    pass


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _normal4(u, v, w):
    """A vector orthogonal to u, v, w in R^4 (generalized cross product)."""
    cols = [(u[i], v[i], w[i]) for i in range(4)]
    out = []
    for i in range(4):
        rows = [cols[j] for j in range(4) if j != i]
        m = _det3(*zip(*rows))
        out.append(m if i % 2 == 0 else -m)
    return tuple(out)


def hyperplane(points: Sequence[Point], facet: Sequence[int]) -> tuple[tuple, object]:
    """``(a, b)`` with ``a . x = b`` through the four facet points."""
    p0, p1, p2, p3 = (points[i] for i in facet)
    a = _normal4(_sub(p1, p0), _sub(p2, p0), _sub(p3, p0))
    return a, _dot(a, p0)


def brute_force_facets(points: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Facets of the convex hull of points in R^4 in general position."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    n = len(pts)
    if any(len(p) != 4 for p in pts):
        raise ValueError("points must lie in R^4")
    if n > 12:
        raise ValueError("brute force is meant for at most 12 points")
    # integer arithmetic is much faster; scale by a common denominator
    den = 1
    for p in pts:
        for c in p:
            den = den * c.denominator // _gcd(den, c.denominator)
    ip = [tuple(int(c * den) for c in p) for p in pts]
    out = []
    for facet in combinations(range(n), 4):
        a, b = hyperplane(ip, facet)
        signs = set()
        for q in range(n):
            if q in facet:
                continue
            s = _dot(a, ip[q]) - b
            if s == 0:
                raise DegenerateError(f"points {facet + (q,)} lie on a common hyperplane")
            signs.add(s > 0)
        if len(signs) <= 1:
            out.append(facet)
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def gale_evenness_facets(n: int) -> list[tuple[int, ...]]:
    """Facets of the cyclic 4-polytope on n points by Gale's evenness rule."""
    out = []
    for S in combinations(range(n), 4):
        ok = True
        for i, j in combinations([v for v in range(n) if v not in S], 2):
            if sum(1 for s in S if i < s < j) % 2:
                ok = False
                break
        if ok:
            out.append(S)
    return out


# -- realization search ---------------------------------------------------------

@dataclass
class Realization:
    """Points indexed by the target's vertex labels."""
    points: dict[int, Point]
    trial: int
    facets: list[tuple[int, ...]]


def _sample_box(rng: random.Random, n: int, box: int) -> list[Point]:
    return [tuple(Fraction(rng.randint(-box, box)) for _ in range(4)) for _ in range(n)]


def _sample_sphere(rng: random.Random, n: int, box: int) -> list[Point]:
    # integer points near a sphere of radius ``box``; hull vertices are then likely
    pts = []
    for _ in range(n):
        g = [rng.gauss(0.0, 1.0) for _ in range(4)]
        r = sum(x * x for x in g) ** 0.5 or 1.0
        pts.append(tuple(Fraction(round(box * x / r)) for x in g))
    return pts


SAMPLERS = {"box": _sample_box, "sphere": _sample_sphere}


def realize_search(target: SimplicialComplex, trials: int = 10**6, seed: int = 0,
                   sampler: str = "box", box: int = 1000) -> Realization | None:
    """Sample integer configurations until one's hull is isomorphic to ``target``."""
    labels = target.vertices
    n = len(labels)
    f3 = target.f_vector()[3] if target.dim == 3 else None
    draw = SAMPLERS[sampler]
    rng = random.Random(seed)
    for trial in range(trials):
        pts = draw(rng, n, box)
        try:
            facets = brute_force_facets(pts)
        except DegenerateError:
            continue
        if len(facets) != f3:
            continue
        hull = SimplicialComplex.from_facets(facets)
        if hull.num_vertices != n:
            continue
        pi = are_isomorphic(hull, target)
        if pi is None:
            continue
        points = {pi[i]: pts[i] for i in range(n)}
        return Realization(points, trial, [tuple(sorted(pi[v] for v in F)) for F in facets])
    return None


# -- Schlegel diagrams ------------------------------------------------------------

@dataclass
class SchlegelProjection:
    base: tuple[int, ...]
    viewpoint: Point
    coords: dict[int, tuple[Fraction, Fraction, Fraction]]
    tetrahedra: list[tuple[int, ...]]
    dropped_axis: int = 0


def _outward(points: dict[int, Point], facet, inside: Point):
    a, b = hyperplane(points, facet)
    s = _dot(a, inside) - b
    if s == 0:
        raise DegenerateError(f"interior point lies on facet {facet}")
    if s > 0:
        a = tuple(-x for x in a)
        b = -b
    return a, b


def _centroid(pts) -> Point:
    pts = list(pts)
    return tuple(sum(c) / len(pts) for c in zip(*pts))


def schlegel(points: dict[int, Sequence], facets: Sequence[Sequence[int]], base: Sequence[int]) -> SchlegelProjection:
    """Project from a point just beyond ``base`` onto its hyperplane.

    The viewpoint sits on the ray from the centroid of all points through
    the centroid of the base, halfway between the base and the nearest other
    facet hyperplane the ray crosses (exact).
    """
    P = {v: tuple(Fraction(c) for c in p) for v, p in points.items()}
    facets = [tuple(sorted(F)) for F in facets]
    base = tuple(sorted(base))
    if base not in facets:
        raise ValueError("base must be one of the facets")
    c = _centroid(P.values())
    g = _centroid(P[v] for v in base)
    d = _sub(g, c)
    planes = {F: _outward(P, F, c) for F in facets}
    limit = None
    for F, (a, b) in planes.items():
        if F == base:
            continue
        rate = _dot(a, d)
        if rate > 0:
            lam = (b - _dot(a, c)) / rate
            if limit is None or lam < limit:
                limit = lam
    if limit is not None and limit <= 1:
        raise DegenerateError("no viewpoint beyond the base on the centroid ray")
    lam = Fraction(2) if limit is None else (1 + limit) / 2
    y = tuple(ci + lam * di for ci, di in zip(c, d))
    a, b = planes[base]
    axis = next(i for i in range(4) if a[i] != 0)
    coords = {}
    for v, p in P.items():
        if v in base:
            z = p
        else:
            mu = (b - _dot(a, y)) / _dot(a, _sub(p, y))
            z = tuple(yi + mu * (pi - yi) for yi, pi in zip(y, p))
        coords[v] = tuple(z[i] for i in range(4) if i != axis)
    tets = sorted(F for F in facets if F != base)
    return SchlegelProjection(base, y, coords, tets, axis)


def viewpoint_ok(points: dict[int, Sequence], facets, base, y) -> bool:
    """Beyond the base hyperplane and beneath every other one."""
    P = {v: tuple(Fraction(c) for c in p) for v, p in points.items()}
    c = _centroid(P.values())
    for F in facets:
        a, b = _outward(P, tuple(sorted(F)), c)
        s = _dot(a, y) - b
        if tuple(sorted(F)) == tuple(sorted(base)):
            if s <= 0:
                return False
        elif s >= 0:
            return False
    return True


def _volume(coords, t) -> Fraction:
    q0 = coords[t[0]]
    return _det3(_sub(coords[t[1]], q0), _sub(coords[t[2]], q0), _sub(coords[t[3]], q0))


def verify_schlegel(proj: SchlegelProjection) -> bool:
    """Projected tetrahedra are nondegenerate, coherently oriented across
    every shared triangle, and their volumes add up to the base's."""
    C = proj.coords
    vols = {t: _volume(C, t) for t in proj.tetrahedra}
    if any(v == 0 for v in vols.values()):
        return False
    by_tri: dict[tuple, list[tuple]] = {}
    for t in proj.tetrahedra:
        for r in combinations(t, 3):
            by_tri.setdefault(r, []).append(t)
    base_tris = set(combinations(proj.base, 3))
    for r, ts in by_tri.items():
        if r in base_tris:
            if len(ts) != 1:
                return False
            continue
        if len(ts) != 2:
            return False
        q0 = C[r[0]]
        u, v = _sub(C[r[1]], q0), _sub(C[r[2]], q0)
        sides = []
        for t in ts:
            (w,) = set(t) - set(r)
            sides.append(_det3(u, v, _sub(C[w], q0)))
        if sides[0] * sides[1] >= 0:
            return False
    total = sum(abs(v) for v in vols.values())
    return total == abs(_volume(C, proj.base))


def choose_base(points: dict[int, Sequence], facets, candidates: int = 5) -> tuple[int, ...]:
    """Among the first few facets (sorted), the one whose diagram has the
    largest minimum tetrahedron volume; ties go to the smaller facet."""
    best = None
    for F in sorted(tuple(sorted(F)) for F in facets)[:candidates]:
        try:
            proj = schlegel(points, facets, F)
        except DegenerateError:
            continue
        if not verify_schlegel(proj):
            continue
        m = min(abs(_volume(proj.coords, t)) for t in proj.tetrahedra)
        if best is None or m > best[0]:
            best = (m, F)
    if best is None:
        raise DegenerateError("no candidate base gives a valid diagram")
    return best[1]


# -- embedded 2-complexes ----------------------------------------------------------

@dataclass
class GeometricComplex:
    points: dict[int, tuple[Fraction, ...]]
    triangles: list[tuple[int, int, int]]


@dataclass
class EmbeddingCheck:
    ok: bool
    pair: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def extract_embedding(proj: SchlegelProjection, pattern_faces) -> GeometricComplex:
    faces = set()
    for t in proj.tetrahedra:
        for k in (1, 2, 3):
            faces.update(combinations(t, k))
    tris = [tuple(sorted(f)) for f in pattern_faces]
    missing = [f for f in tris if f not in faces]
    if missing:
        raise ValueError(f"not faces of the diagram: {missing}")
    used = sorted({v for t in tris for v in t})
    return GeometricComplex({v: proj.coords[v] for v in used}, sorted(tris))


def _in_triangle_2d(p, a, b, c) -> bool:
    d1 = _orient2(a, b, p)
    d2 = _orient2(b, c, p)
    d3 = _orient2(c, a, p)
    neg = d1 < 0 or d2 < 0 or d3 < 0
    pos = d1 > 0 or d2 > 0 or d3 > 0
    return not (neg and pos)


def _orient2(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _drop(p, axis):
    return tuple(p[i] for i in range(3) if i != axis)


def _segment_triangle(A, B, tri) -> list:
    """Endpoints of segment AB intersected with a triangle (0, 1 or 2 points)."""
    P0, P1, P2 = tri
    n = _cross(_sub(P1, P0), _sub(P2, P0))
    sa = _dot(n, _sub(A, P0))
    sb = _dot(n, _sub(B, P0))
    axis = max(range(3), key=lambda i: abs(n[i]))
    t2 = [_drop(P, axis) for P in tri]
    if sa == 0 and sb == 0:
        # coplanar: clip the segment against the three edge half-planes
        a2, b2 = _drop(A, axis), _drop(B, axis)
        lo, hi = Fraction(0), Fraction(1)
        orient = _orient2(*t2)
        for i in range(3):
            p, q = t2[i], t2[(i + 1) % 3]
            fa = _orient2(p, q, a2) * orient
            fb = _orient2(p, q, b2) * orient
            # f(s) = fa + s (fb - fa) >= 0
            if fa < 0 and fb < 0:
                return []
            if fa < 0:
                lo = max(lo, Fraction(-fa, 1) / (fb - fa))
            elif fb < 0:
                hi = min(hi, Fraction(fa, 1) / (fa - fb))
        if lo > hi:
            return []
        pts = [tuple(a + lo * (b - a) for a, b in zip(A, B)),
               tuple(a + hi * (b - a) for a, b in zip(A, B))]
        return pts if lo != hi else pts[:1]
    if (sa > 0 and sb > 0) or (sa < 0 and sb < 0):
        return []
    s = Fraction(sa) / (sa - sb)
    X = tuple(a + s * (b - a) for a, b in zip(A, B))
    return [X] if _in_triangle_2d(_drop(X, axis), *t2) else []


def _in_hull(p, shared_pts) -> bool:
    if not shared_pts:
        return False
    if len(shared_pts) == 1:
        return p == shared_pts[0]
    a, b = shared_pts[0], shared_pts[1]
    if len(shared_pts) == 2:
        ab, ap = _sub(b, a), _sub(p, a)
        if any(_cross(ab, ap)):
            return False
        t = _dot(ap, ab)
        return 0 <= t <= _dot(ab, ab)
    raise ValueError("two distinct triangles share at most an edge")


def _pair_ok(G: GeometricComplex, t1, t2) -> bool:
    P = G.points
    T1 = [P[v] for v in t1]
    T2 = [P[v] for v in t2]
    shared = [P[v] for v in sorted(set(t1) & set(t2))]
    pieces = []
    for (X, Y) in ((T1, T2), (T2, T1)):
        for i, j in ((0, 1), (1, 2), (0, 2)):
            pieces += _segment_triangle(X[i], X[j], Y)
    return all(_in_hull(p, shared) for p in pieces)


def verify_embedding(G: GeometricComplex) -> EmbeddingCheck:
    """Every pair of triangles meets exactly in their common face."""
    P = G.points
    for t in G.triangles:
        a, b, c = (P[v] for v in t)
        if not any(_cross(_sub(b, a), _sub(c, a))):
            return EmbeddingCheck(False, (t,))
    for t1, t2 in combinations(G.triangles, 2):
        if not _pair_ok(G, t1, t2):
            return EmbeddingCheck(False, (t1, t2))
    return EmbeddingCheck(True)


def export_off(G: GeometricComplex, decimal_digits: int = 6) -> str:
    from .formats import serialize_off

    labels = sorted(G.points)
    pos = {v: i for i, v in enumerate(labels)}
    return serialize_off([G.points[v] for v in labels],
                         [tuple(pos[v] for v in t) for t in G.triangles], decimal_digits)
