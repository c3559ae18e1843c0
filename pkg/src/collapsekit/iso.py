"""Canonical labeling, isomorphism, automorphisms and subcomplex search.

The canonical form of a complex is the lexicographically smallest sorted
facet list over all bijections of its vertices onto ``0..n-1``.  It is
computed by branch and bound: labels are handed out in increasing order and
a partial labeling is abandoned once a lower bound on every completion is
no better than the best full labeling found so far.
"""
from __future__ import annotations

from typing import Iterator

from .complex import ComplexError, SimplicialComplex, popcount, verts

MAX_CANONICAL_VERTICES = 16


def _facet_bound(fvs, label, k):
    """Sorted lower-bound tuples for every facet under a partial labeling."""
    out = []
    for fv in fvs:
        lab = []
        m = 0
        for v in fv:
            l = label[v]
            if l < 0:
                m += 1
            else:
                lab.append(l)
        lab.sort()
        out.append(tuple(lab) + tuple(range(k, k + m)))
    out.sort()
    return out


def _vertex_colors(K: SimplicialComplex) -> dict[int, tuple]:
    """Isomorphism-invariant vertex colors (a few rounds of neighbor refinement)."""
    color = {}
    for v in K.vertices:
        bit = 1 << v
        color[v] = tuple(sorted(popcount(F) for F in K.facet_masks if F & bit))
    nbrs = {v: [] for v in K.vertices}
    for e in K.faces_of_dim(1):
        a, b = verts(e)
        nbrs[a].append(b)
        nbrs[b].append(a)
    for _ in range(3):
        new = {v: (color[v], tuple(sorted(color[w] for w in nbrs[v]))) for v in K.vertices}
        # compress to ranks so tuples stay small
        ranks = {c: i for i, c in enumerate(sorted(set(new.values())))}
        new = {v: ranks[c] for v, c in new.items()}
        if len(set(new.values())) == len(set(color.values())):
            color = new
            break
        color = new
    return color


def _branch_and_bound(K: SimplicialComplex, cells: list[list[int]] | None):
    vs = K.vertices
    n = len(vs)
    fvs = [verts(F) for F in K.facet_masks]
    label = [-1] * (max(vs) + 1)
    if cells is None:
        allowed = [vs] * n
    else:
        allowed = [c for c in cells for _ in c]
    best: list = [None, None]

    def rec(k: int, order: list[int]):
        if k == n:
            cand = _facet_bound(fvs, label, k)
            if best[0] is None or cand < best[0]:
                best[0] = cand
                best[1] = list(order)
            return
        children = []
        for v in allowed[k]:
            if label[v] >= 0:
                continue
            label[v] = k
            bound = _facet_bound(fvs, label, k + 1)
            label[v] = -1
            if best[0] is not None and bound >= best[0]:
                continue
            children.append((bound, v))
        children.sort()
        for bound, v in children:
            if best[0] is not None and bound >= best[0]:
                break
            label[v] = k
            order.append(v)
            rec(k + 1, order)
            order.pop()
            label[v] = -1

    rec(0, [])
    return best[0], {v: i for i, v in enumerate(best[1])}


def canonical_form(K: SimplicialComplex) -> tuple[list[tuple[int, ...]], dict[int, int]]:
    """Return ``(canonical facet list, relabeling old -> new)``."""
    n = K.num_vertices
    if n > MAX_CANONICAL_VERTICES:
        raise ComplexError(f"canonical_form supports at most {MAX_CANONICAL_VERTICES} vertices")
    if n == 0:
        return [], {}
    return _branch_and_bound(K, None)


def canonical_key(K: SimplicialComplex) -> tuple:
    """A faster complete isomorphism invariant.

    Lexicographic minimum over the labelings that list vertices in order of
    an invariant coloring.  Equal exactly for isomorphic complexes, but not
    the same value as :func:`canonical_form`.
    """
    if K.num_vertices == 0:
        return ()
    colors = _vertex_colors(K)
    cells: dict[int, list[int]] = {}
    for v in K.vertices:
        cells.setdefault(colors[v], []).append(v)
    ordered = [cells[c] for c in sorted(cells)]
    form, _ = _branch_and_bound(K, ordered)
    return (tuple(len(c) for c in ordered), tuple(form))


def are_isomorphic(A: SimplicialComplex, B: SimplicialComplex) -> dict[int, int] | None:
    """A relabeling ``pi`` with ``A.relabel(pi) == B``, or None."""
    if A.f_vector() != B.f_vector():
        return None
    ca, pa = canonical_form(A)
    cb, pb = canonical_form(B)
    if ca != cb:
        return None
    inv_b = {new: old for old, new in pb.items()}
    return {v: inv_b[pa[v]] for v in A.vertices}


# -- injective vertex maps --------------------------------------------------

def _link_fvectors(K: SimplicialComplex) -> dict[int, tuple[int, ...]]:
    return {v: K.link(1 << v).f_vector() for v in K.vertices}


def _vertex_degrees(K: SimplicialComplex) -> dict[int, int]:
    deg = {v: 0 for v in K.vertices}
    for e in K.faces_of_dim(1):
        a, b = verts(e)
        deg[a] += 1
        deg[b] += 1
    return deg


def _search_order(P: SimplicialComplex) -> list[int]:
    """Pattern vertices ordered so each is adjacent to many earlier ones."""
    deg = _vertex_degrees(P)
    adj = {v: set() for v in P.vertices}
    for e in P.faces_of_dim(1):
        a, b = verts(e)
        adj[a].add(b)
        adj[b].add(a)
    order: list[int] = []
    remaining = set(P.vertices)
    while remaining:
        placed = set(order)
        v = min(remaining, key=lambda u: (-len(adj[u] & placed), -deg[u], u))
        order.append(v)
        remaining.remove(v)
    return order


def _embeddings(host: SimplicialComplex, pattern: SimplicialComplex,
                bijective: bool) -> Iterator[dict[int, int]]:
    order = _search_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    # faces to check once their last vertex (in search order) is placed
    checks: list[list[tuple[int, ...]]] = [[] for _ in order]
    for f in pattern.faces:
        fv = verts(f)
        if len(fv) >= 2:
            checks[max(pos[v] for v in fv)].append(fv)
    hdeg = _vertex_degrees(host)
    pdeg = _vertex_degrees(pattern)
    hlink = _link_fvectors(host)
    plink = _link_fvectors(pattern)

    def dominates(a, b):
        return len(a) >= len(b) and all(x >= y for x, y in zip(a, b))

    cands = {}
    for u in order:
        if bijective:
            ok = [w for w in host.vertices if hdeg[w] == pdeg[u] and hlink[w] == plink[u]]
        else:
            ok = [w for w in host.vertices if hdeg[w] >= pdeg[u] and dominates(hlink[w], plink[u])]
        cands[u] = ok
    hfaces = host.faces
    image: dict[int, int] = {}
    used = 0

    def rec(k: int):
        nonlocal used
        if k == len(order):
            yield dict(image)
            return
        u = order[k]
        for w in cands[u]:
            if used >> w & 1:
                continue
            image[u] = w
            good = True
            for fv in checks[k]:
                m = 0
                for v in fv:
                    m |= 1 << image[v]
                if m not in hfaces:
                    good = False
                    break
            if good:
                used |= 1 << w
                yield from rec(k + 1)
                used &= ~(1 << w)
            del image[u]

    yield from rec(0)


def contains_subcomplex(host: SimplicialComplex, pattern: SimplicialComplex) -> dict[int, int] | None:
    """First injective relabeling (ascending candidate ids) mapping
    ``pattern`` into ``host``, or None."""
    if pattern.num_vertices > host.num_vertices:
        return None
    if any(a < b for a, b in zip(host.f_vector(), pattern.f_vector())) or pattern.dim > host.dim:
        return None
    if pattern.is_subcomplex_of(host) and not pattern.is_empty():
        # identity is the first map tried when labels already fit
        ident = {v: v for v in pattern.vertices}
        return ident
    return next(_embeddings(host, pattern, bijective=False), None)


def automorphisms(K: SimplicialComplex) -> list[dict[int, int]]:
    """The full automorphism group as a list of vertex bijections."""
    if K.num_vertices > MAX_CANONICAL_VERTICES:
        raise ComplexError(f"automorphisms supports at most {MAX_CANONICAL_VERTICES} vertices")
    # an injective face-preserving self-map of a finite complex is onto
    return list(_embeddings(K, K, bijective=True))


def compose(outer: dict[int, int], inner: dict[int, int]) -> dict[int, int]:
    return {v: outer[w] for v, w in inner.items()}


def invert(pi: dict[int, int]) -> dict[int, int]:
    return {w: v for v, w in pi.items()}
