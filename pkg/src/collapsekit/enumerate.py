"""Isomorph-free generation of small 3-manifolds and 3-balls.

Closed manifolds: fix vertex 0 as a vertex of maximum degree, put a
canonical 2-sphere in as its link, then close the smallest open triangle
with every admissible apex until nothing is open.  Every closed
3-manifold on n vertices arises this way (relabel a vertex of maximum
degree to 0 and its link to the canonical copy), and pruning on vertex
degree and edge links keeps the tree small.  Survivors are reduced to
one canonical representative per isomorphism class.

Balls: every 3-ball considered here is shellable, and each initial segment
of a shelling of a ball is again a ball, so the shellable balls with k
tetrahedra are exactly the one-step shelling extensions of those with k - 1.
Each level is reduced to isomorphism classes before the next is built.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Iterator

from .complex import ManifoldType, SimplicialComplex, classify_small_manifold, mask, popcount, ridges_of, verts
from .iso import canonical_form, canonical_key, contains_subcomplex
from .search import Budget, BudgetExhausted, Verdict


@dataclass
class CensusRecord:
    facets: list[tuple[int, ...]]
    f_vector: tuple[int, ...]
    flags: dict[str, bool] = field(default_factory=dict)
    shelling: list[tuple[int, ...]] | None = None

    @property
    def complex(self) -> SimplicialComplex:
        return SimplicialComplex.from_facets(self.facets)

    @property
    def hash(self) -> str:
        return self.complex.content_hash()


def _record(K: SimplicialComplex, flags: dict[str, bool], order=None) -> CensusRecord:
    form, perm = canonical_form(K)
    shelling = None
    if order is not None:
        shelling = [tuple(sorted(perm[v] for v in F)) for F in order]
    return CensusRecord(list(form), K.f_vector(), dict(flags), shelling)


# -- closing open ridges ------------------------------------------------------

class _Closer:
    """Depth-first completion of a pure d-complex to a closed pseudomanifold.

    ``fixed`` vertices are already closed and never used as apex; vertices
    in ``fresh`` are interchangeable until first used, so only the smallest
    unused one is tried.
    """

    def __init__(self, d: int, n: int, start: Iterable[int], fresh: Iterable[int] = (),
                 fixed: int = 0, max_degree: int | None = None, edge_links: bool = False,
                 budget: Budget | None = None):
        self.d = d
        self.n = n
        self.facets = set(start)
        self.count: dict[int, int] = {}
        self.nbrs = [0] * n
        for F in self.facets:
            self._add(F)
        self.fresh = sorted(fresh)
        self.fixed = fixed
        self.max_degree = max_degree
        self.edge_links = edge_links
        self.b = budget or Budget(None)

    def _add(self, F: int) -> None:
        for r in ridges_of(F):
            self.count[r] = self.count.get(r, 0) + 1
        for v in verts(F):
            self.nbrs[v] |= F & ~(1 << v)

    def _remove(self, F: int, saved_nbrs: list[int]) -> None:
        for r in ridges_of(F):
            c = self.count[r] - 1
            if c:
                self.count[r] = c
            else:
                del self.count[r]
        self.nbrs = saved_nbrs

    def _edge_links_ok(self, F: int) -> bool:
        # the link of an edge in a closed 3-manifold is one cycle; a closed
        # cycle next to anything else can never be repaired
        for e in (m for m in _pairs(F)):
            adj: dict[int, list[int]] = {}
            for G in self.facets:
                if G & e == e:
                    a, b = verts(G & ~e)
                    adj.setdefault(a, []).append(b)
                    adj.setdefault(b, []).append(a)
            if any(len(x) > 2 for x in adj.values()):
                return False
            if all(len(x) == 2 for x in adj.values()):
                continue
            # some path is open: no component may already be a cycle
            seen: set[int] = set()
            for s in adj:
                if s in seen:
                    continue
                comp = [s]
                seen.add(s)
                k = 0
                while k < len(comp):
                    for t in adj[comp[k]]:
                        if t not in seen:
                            seen.add(t)
                            comp.append(t)
                    k += 1
                if all(len(adj[x]) == 2 for x in comp):
                    return False
        return True

    def run(self) -> Iterator[frozenset[int]]:
        self.b.tick()
        open_ridges = [r for r, c in self.count.items() if c == 1]
        if not open_ridges:
            yield frozenset(self.facets)
            return
        r = min(open_ridges, key=verts)
        used = 0
        for F in self.facets:
            used |= F
        tried_fresh = False
        for w in range(self.n):
            bit = 1 << w
            if r & bit or self.fixed & bit:
                continue
            if w in self.fresh and not used & bit:
                if tried_fresh:
                    continue
                tried_fresh = True
            F = r | bit
            if F in self.facets:
                continue
            if any(self.count.get(q, 0) >= 2 for q in ridges_of(F)):
                continue
            saved = list(self.nbrs)
            self.facets.add(F)
            self._add(F)
            ok = True
            if self.max_degree is not None:
                ok = all(popcount(self.nbrs[v]) <= self.max_degree for v in verts(F))
            if ok and self.edge_links:
                ok = self._edge_links_ok(F)
            if ok:
                yield from self.run()
            self.facets.discard(F)
            self._remove(F, saved)


def _pairs(F: int) -> Iterator[int]:
    vs = verts(F)
    for a, b in combinations(vs, 2):
        yield (1 << a) | (1 << b)


def _dedupe(complexes: Iterable[SimplicialComplex], key=canonical_key) -> list[SimplicialComplex]:
    seen: dict = {}
    for K in complexes:
        k = key(K)
        if k not in seen:
            seen[k] = K
    return list(seen.values())


def enumerate_2spheres(n: int) -> list[SimplicialComplex]:
    """All triangulated 2-spheres on exactly n vertices, one per class."""
    if n < 4:
        return []
    out = []
    for facets in _Closer(2, n, [0b111], fresh=range(3, n)).run():
        K = SimplicialComplex.from_masks(facets)
        if K.num_vertices == n and classify_small_manifold(K) is ManifoldType.SPHERE2:
            out.append(K)
    return sorted(_dedupe(out), key=lambda K: canonical_form(K)[0])


def _closed_labeled(n: int, budget: Budget | None = None) -> Iterator[SimplicialComplex]:
    for k in range(n - 1, 3, -1):
        for L in enumerate_2spheres(k):
            form, _ = canonical_form(L)
            star = [mask((0,) + tuple(v + 1 for v in t)) for t in form]
            closer = _Closer(3, n, star, fresh=range(k + 1, n), fixed=1,
                             max_degree=k, edge_links=True, budget=budget)
            for facets in closer.run():
                K = SimplicialComplex.from_masks(facets)
                if K.num_vertices == n and classify_small_manifold(K) is ManifoldType.MANIFOLD3_CLOSED:
                    yield K


def enumerate_closed_3manifolds(n: int) -> Iterator[CensusRecord]:
    """One record per combinatorial type of closed 3-manifold on n vertices,
    sorted by f-vector and then facet list."""
    if not 5 <= n <= 8:
        raise ValueError("supported vertex counts are 5..8")
    reps = _dedupe(_closed_labeled(n))
    records = [_record(K, {"closed_manifold": True}) for K in reps]
    records.sort(key=lambda r: (r.f_vector, r.facets))
    yield from records


def closed_3manifolds_oracle(n: int) -> list[list[tuple[int, ...]]]:
    """Independent count for small n: close up from the tetrahedron 0123 with
    no degree or link pruning, deduplicate by the true canonical form."""
    out = []
    for facets in _Closer(3, n, [0b1111], fresh=range(4, n)).run():
        K = SimplicialComplex.from_masks(facets)
        if K.num_vertices == n and classify_small_manifold(K) is ManifoldType.MANIFOLD3_CLOSED:
            out.append(K)
    return sorted(canonical_form(K)[0] for K in _dedupe(out, key=lambda K: tuple(canonical_form(K)[0])))


def census_containment(census: Iterable[CensusRecord], pattern: SimplicialComplex) -> list[CensusRecord]:
    hits = []
    for rec in census:
        if contains_subcomplex(rec.complex, pattern) is not None:
            hits.append(rec)
    return hits


def write_census(directory: Path, records: list[CensusRecord]) -> Path:
    from .formats import serialize_census_index, write_complex

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rows = []
    for rec in records:
        h = rec.hash
        write_complex(directory / f"{h[:16]}.txt", rec.complex)
        rows.append((h, rec.f_vector, [k for k, v in sorted(rec.flags.items()) if v]))
    index = directory / "index.txt"
    index.write_text(serialize_census_index(rows))
    return index


# -- balls by shelling ---------------------------------------------------------

@dataclass
class _Ball:
    facets: frozenset[int]
    order: tuple[int, ...]
    nverts: int

    def boundary(self) -> dict[int, int]:
        count: dict[int, int] = {}
        for F in self.facets:
            for r in ridges_of(F):
                count[r] = count.get(r, 0) + 1
        return count


def _shelling_extensions(ball: _Ball, allow_new: bool) -> Iterator[_Ball]:
    count = ball.boundary()
    faces: set[int] = set()
    for F in ball.facets:
        x = F
        s = F
        while s:
            faces.add(s)
            s = (s - 1) & x
    candidates = set()
    for r, c in count.items():
        if c != 1:
            continue
        for w in range(ball.nverts + (1 if allow_new else 0)):
            if not r >> w & 1:
                candidates.add(r | 1 << w)
    for t in sorted(candidates, key=verts):
        if t in ball.facets:
            continue
        tris = [r for r in ridges_of(t) if r in faces]
        if not tris or len(tris) == 4 or any(count.get(r) != 1 for r in tris):
            continue
        covered = 0
        for r in tris:
            covered |= r
        # every face of t already present must lie in one of the shared triangles
        ok = True
        s = t
        while s:
            if s in faces and not any(s & r == s for r in tris):
                ok = False
                break
            s = (s - 1) & t
        if not ok:
            continue
        new = popcount(t) - popcount(t & _vertex_mask(ball.nverts))
        yield _Ball(ball.facets | {t}, ball.order + (t,), ball.nverts + new)


def _vertex_mask(n: int) -> int:
    return (1 << n) - 1


def _ball_key(ball: _Ball):
    return canonical_key(SimplicialComplex.from_masks(ball.facets))


@dataclass
class BallSearchResult:
    balls: list[CensusRecord]
    verdict: Verdict
    levels: list[int] = field(default_factory=list)


def shellable_ball_levels(n: int, max_facets: int, budget: int | None = None,
                          keep=lambda ball, k: True) -> Iterator[tuple[int, list[_Ball]]]:
    """Isomorphism classes of shellable 3-balls with at most n vertices,
    level by level in the number of tetrahedra, pruned to those that can
    still reach n vertices within ``max_facets`` tetrahedra."""
    b = Budget(budget)
    level = [_Ball(frozenset({0b1111}), (0b1111,), 4)] if n >= 4 else []
    k = 1
    while level and k <= max_facets:
        yield k, level
        if k == max_facets:
            return
        nxt: dict = {}
        for ball in level:
            for ext in _shelling_extensions(ball, ball.nverts < n):
                b.tick()
                if n - ext.nverts > max_facets - (k + 1) or not keep(ext, k + 1):
                    continue
                key = _ball_key(ext)
                if key not in nxt:
                    nxt[key] = ext
        level = list(nxt.values())
        k += 1


def _ball_record(ball: _Ball, flags) -> CensusRecord:
    K = SimplicialComplex.from_masks(ball.facets)
    return _record(K, flags, [verts(F) for F in ball.order])


def search_balls_containing(pattern: SimplicialComplex, n_vertices: int, max_facets: int,
                            budget: int | None = None) -> BallSearchResult:
    """Classes of shellable 3-balls on ``n_vertices`` vertices with at most
    ``max_facets`` tetrahedra that contain ``pattern``.

    Completeness relies on every 3-ball with at most 8 vertices being
    shellable.
    """
    if pattern.num_vertices > n_vertices:
        return BallSearchResult([], Verdict.YES)
    hits = []
    sizes = []
    try:
        for k, level in shellable_ball_levels(n_vertices, max_facets, budget):
            sizes.append(len(level))
            for ball in level:
                if ball.nverts != n_vertices:
                    continue
                K = SimplicialComplex.from_masks(ball.facets)
                if contains_subcomplex(K, pattern) is not None:
                    hits.append(_ball_record(ball, {"ball": True, "contains_pattern": True}))
    except BudgetExhausted:
        return BallSearchResult(hits, Verdict.INDETERMINATE, sizes)
    hits.sort(key=lambda r: (r.f_vector, r.facets))
    return BallSearchResult(hits, Verdict.YES, sizes)


def enumerate_balls(n_vertices: int, budget: int | None = None,
                    max_facets: int | None = None) -> BallSearchResult:
    """All shellable 3-balls on exactly ``n_vertices`` vertices, one per class."""
    if max_facets is None:
        max_facets = comb(n_vertices, 4)
    out = []
    sizes = []
    try:
        for k, level in shellable_ball_levels(n_vertices, max_facets, budget):
            sizes.append(len(level))
            out.extend(_ball_record(ball, {"ball": True}) for ball in level if ball.nverts == n_vertices)
    except BudgetExhausted:
        return BallSearchResult(out, Verdict.INDETERMINATE, sizes)
    out.sort(key=lambda r: (r.f_vector, r.facets))
    return BallSearchResult(out, Verdict.YES, sizes)


def balls_oracle(n: int) -> list[list[tuple[int, ...]]]:
    """Brute force over all sets of tetrahedra on n vertices (tiny n only)."""
    from .collapse import collapse_to_point

    tets = [mask(t) for t in combinations(range(n), 4)]
    forms = set()
    for bits in range(1, 1 << len(tets)):
        facets = [tets[i] for i in range(len(tets)) if bits >> i & 1]
        K = SimplicialComplex.from_masks(facets)
        if K.num_vertices != n or classify_small_manifold(K) is not ManifoldType.MANIFOLD3_WITH_BOUNDARY:
            continue
        if classify_small_manifold(K.boundary_complex()) is not ManifoldType.SPHERE2:
            continue
        if collapse_to_point(K).yes:
            forms.add(tuple(canonical_form(K)[0]))
    return sorted(list(f) for f in forms)
