"""Collapsing a pseudomanifold minus a facet along a dual spanning tree.

Removing a facet F from a closed pseudomanifold M frees the ridges of F.
Pushing through the dual graph along a spanning tree T removes every facet
and exactly the ridges labeling the edges of T, which leaves the complex
K^T of unperforated ridges plus the lower skeleton, whatever F was.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .collapse import DEFAULT_EXHAUSTIVE_BUDGET, CollapseCertificate, CollapseStep, collapse_to_point
from .complex import ComplexError, SimplicialComplex, mask, popcount, ridges_of, verts
from .search import Verdict


@dataclass(frozen=True)
class DualSpanningTree:
    """Edges of a dual spanning tree, each named by the ridge it crosses."""
    ridges: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.ridges)

    @classmethod
    def of(cls, ridges: Iterable) -> "DualSpanningTree":
        return cls(tuple(sorted(tuple(sorted(r)) for r in ridges)))


class _Dual:
    def __init__(self, M: SimplicialComplex):
        if not M.is_pure() or M.is_empty():
            raise ComplexError("dual graph needs a nonempty pure complex")
        self.nodes = sorted(M.facet_masks, key=verts)
        index = {F: i for i, F in enumerate(self.nodes)}
        inc: dict[int, list[int]] = {}
        for F in self.nodes:
            for r in ridges_of(F):
                inc.setdefault(r, []).append(index[F])
        self.edges: list[tuple[int, int, int]] = []
        for r in sorted(inc, key=verts):
            ends = inc[r]
            if len(ends) > 2:
                raise ComplexError(f"ridge {verts(r)} lies in {len(ends)} facets")
            if len(ends) == 2:
                self.edges.append((ends[0], ends[1], r))
        self.by_ridge = {r: k for k, (_, _, r) in enumerate(self.edges)}
        self.adj: list[list[tuple[int, int]]] = [[] for _ in self.nodes]
        for k, (i, j, _) in enumerate(self.edges):
            self.adj[i].append((j, k))
            self.adj[j].append((i, k))

    def connected(self, edge_ok) -> bool:
        n = len(self.nodes)
        seen = [False] * n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            i = stack.pop()
            for j, k in self.adj[i]:
                if not seen[j] and edge_ok(k):
                    seen[j] = True
                    count += 1
                    stack.append(j)
        return count == n

    def tree(self, ks) -> DualSpanningTree:
        return DualSpanningTree.of(verts(self.edges[k][2]) for k in ks)


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def spanning_trees(M: SimplicialComplex, mode: str = "exhaustive", samples: int = 1,
                   seed: int = 0) -> Iterator[DualSpanningTree]:
    """All dual spanning trees, or ``samples`` uniform ones (Wilson's walk)."""
    dual = _Dual(M)
    if not dual.connected(lambda k: True):
        raise ComplexError("dual graph is disconnected")
    if mode == "exhaustive":
        yield from _all_trees(dual)
    elif mode == "sample":
        rng = random.Random(seed)
        for _ in range(samples):
            yield _wilson(dual, rng)
    else:
        raise ValueError(f"unknown mode {mode!r}")


def _all_trees(dual: _Dual) -> Iterator[DualSpanningTree]:
    n = len(dual.nodes)
    m = len(dual.edges)
    excluded = [False] * m

    def rec(k: int, parent: list[int], chosen: list[int]):
        if len(chosen) == n - 1:
            yield dual.tree(chosen)
            return
        if k == m:
            return
        i, j, _ = dual.edges[k]
        a, b = _find(parent, i), _find(parent, j)
        if a != b:
            p2 = list(parent)
            p2[a] = b
            chosen.append(k)
            yield from rec(k + 1, p2, chosen)
            chosen.pop()
        # leaving edge k out is only possible if it is not a bridge of what remains
        excluded[k] = True
        if dual.connected(lambda e: not excluded[e]):
            yield from rec(k + 1, parent, chosen)
        excluded[k] = False

    yield from rec(0, list(range(n)), [])


def _wilson(dual: _Dual, rng: random.Random) -> DualSpanningTree:
    n = len(dual.nodes)
    in_tree = [False] * n
    in_tree[0] = True
    nxt: list[tuple[int, int] | None] = [None] * n
    for start in range(n):
        u = start
        while not in_tree[u]:
            nxt[u] = rng.choice(dual.adj[u])
            u = nxt[u][0]
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            u = nxt[u][0]
    return dual.tree(nxt[i][1] for i in range(1, n))


def tree_complex(M: SimplicialComplex, T: DualSpanningTree) -> SimplicialComplex:
    """Ridges of M not crossed by T, plus the full codimension-two skeleton."""
    d = M.dim
    perforated = {mask(r) for r in T.ridges}
    return SimplicialComplex((f for f in M.faces if popcount(f) <= d and f not in perforated),
                             _closed=True)


def _check_tree(dual: _Dual, T: DualSpanningTree) -> list[int]:
    ks = []
    for r in T.ridges:
        k = dual.by_ridge.get(mask(r))
        if k is None:
            raise ComplexError(f"{r} is not an interior ridge")
        ks.append(k)
    parent = list(range(len(dual.nodes)))
    for k in ks:
        i, j, _ = dual.edges[k]
        a, b = _find(parent, i), _find(parent, j)
        if a == b:
            raise ComplexError("tree edges contain a cycle")
        parent[a] = b
    if len(ks) != len(dual.nodes) - 1:
        raise ComplexError("tree does not span the dual graph")
    return ks


def tree_directed_collapse(M: SimplicialComplex, F, T: DualSpanningTree) -> CollapseCertificate:
    """Certificate collapsing M - F (F deleted, its faces kept) onto K^T.

    Starting at F, each tree edge leading from a removed facet to a present
    one is used once: its ridge is free and goes with the present facet.
    Among the edges available at a time, the lexicographically smallest
    ridge goes first.
    """
    dual = _Dual(M)
    ks = _check_tree(dual, T)
    Fm = mask(F)
    if Fm not in M.facet_masks:
        raise ComplexError(f"{tuple(F)} is not a facet")
    root = dual.nodes.index(Fm)
    tree_adj: list[list[int]] = [[] for _ in dual.nodes]
    for k in ks:
        i, j, _ = dual.edges[k]
        tree_adj[i].append(k)
        tree_adj[j].append(k)
    removed = {root}
    frontier = set(tree_adj[root])
    steps = []
    while frontier:
        k = min(frontier, key=lambda e: verts(dual.edges[e][2]))
        frontier.remove(k)
        i, j, r = dual.edges[k]
        new = j if i in removed else i
        steps.append(CollapseStep(verts(r), verts(dual.nodes[new])))
        removed.add(new)
        frontier.update(e for e in tree_adj[new] if e != k)
    return CollapseCertificate(tuple(steps))


@dataclass
class IndependenceReport:
    facets: list[tuple[int, ...]]
    verdicts: list[Verdict]
    stats: list[dict] = field(default_factory=list)

    @property
    def constant(self) -> bool:
        return len(set(self.verdicts)) <= 1

    @property
    def flagged(self) -> bool:
        return Verdict.INDETERMINATE in self.verdicts


def facet_independence_experiment(M: SimplicialComplex, budget: int | None = DEFAULT_EXHAUSTIVE_BUDGET,
                                  strategy: str = "exhaustive", seed: int = 0) -> IndependenceReport:
    """Run collapse_to_point on M - F for every facet F."""
    facets = M.facets
    verdicts = []
    stats = []
    for F in facets:
        out = collapse_to_point(M.delete_open_facets([F]), strategy=strategy, seed=seed, budget=budget)
        verdicts.append(out.verdict)
        stats.append(out.stats)
    return IndependenceReport(list(facets), verdicts, stats)


def find_tree_avoiding(M: SimplicialComplex, protected_ridges: Iterable) -> DualSpanningTree | None:
    """A spanning tree crossing none of ``protected_ridges``, if one exists.

    Kruskal over the allowed edges in ridge order, so the answer is
    deterministic.
    """
    dual = _Dual(M)
    blocked = {mask(r) for r in protected_ridges}
    parent = list(range(len(dual.nodes)))
    chosen = []
    for k, (i, j, r) in enumerate(dual.edges):
        if r in blocked:
            continue
        a, b = _find(parent, i), _find(parent, j)
        if a != b:
            parent[a] = b
            chosen.append(k)
    if len(chosen) != len(dual.nodes) - 1:
        return None
    return dual.tree(chosen)
