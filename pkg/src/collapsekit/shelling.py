"""Shellability, extendable shellability, shelling-to-collapse and
constructibility.

Partial shellings are tracked as bitsets over the facet list.  Whether a
partial shelling extends depends only on the union of its facets, so both
searches memoize on that bitset.
"""
from __future__ import annotations

from typing import Sequence

from .collapse import CollapseCertificate, CollapseStep
from .complex import ComplexError, SimplicialComplex, mask, popcount, submasks, verts
from .homology import homology_z2
from .search import Budget, BudgetExhausted, SearchOutcome, Verdict

DEFAULT_SHELLING_BUDGET = 10**7


class InvalidShelling(ComplexError):
    def __init__(self, index: int, msg: str):
        super().__init__(f"shelling step {index}: {msg}")
        self.index = index


class _Facets:
    """Facet numbering plus the pairwise data the shelling test needs."""

    def __init__(self, K: SimplicialComplex):
        if not K.is_pure():
            raise ComplexError("shelling requires a pure complex")
        self.masks = sorted(K.facet_masks, key=verts)
        self.d = K.dim
        n = len(self.masks)
        # for each facet t and other facet s: the vertices of t missing from s
        self.missing = [[t & ~s for s in self.masks] for t in self.masks]
        self.meets = [[bool(t & s) for s in self.masks] for t in self.masks]
        self.shares_ridge = [[i != j and popcount(t & s) == self.d
                              for j, s in enumerate(self.masks)] for i, t in enumerate(self.masks)]
        self.n = n
        self.all = (1 << n) - 1

    def restriction(self, used: int, t: int) -> int | None:
        """Vertex set R of the minimal new face when facet ``t`` joins ``used``.

        Returns None if the intersection with the earlier facets is not pure
        of codimension one (or is empty).
        """
        if self.d == 0:
            return 0
        good = 0
        miss = self.missing[t]
        ridge = self.shares_ridge[t]
        u = used
        while u:
            low = u & -u
            s = low.bit_length() - 1
            u ^= low
            if ridge[s]:
                good |= miss[s]
        if not good:
            return None
        meets = self.meets[t]
        u = used
        while u:
            low = u & -u
            s = low.bit_length() - 1
            u ^= low
            if meets[s] and not miss[s] & good:
                return None
        return good

    def extensions(self, used: int) -> list[int]:
        if not used:
            return list(range(self.n))
        return [t for t in range(self.n)
                if not used >> t & 1 and self.restriction(used, t) is not None]


def check_shelling(K: SimplicialComplex, order: Sequence) -> int | None:
    """Index of the first step violating the shelling condition, or None."""
    fs = _Facets(K)
    pos = {m: i for i, m in enumerate(fs.masks)}
    masks = [mask(f) for f in order]
    if sorted(masks) != sorted(fs.masks) or len(set(masks)) != len(masks):
        return 0
    used = 0
    for k, m in enumerate(masks):
        t = pos[m]
        if used and fs.restriction(used, t) is None:
            return k
        used |= 1 << t
    return None


def is_shellable(K: SimplicialComplex, budget: int | None = DEFAULT_SHELLING_BUDGET) -> SearchOutcome:
    """Backtracking over partial shellings with a dead-state memo."""
    if K.is_empty():
        return SearchOutcome(Verdict.YES, [])
    if not K.is_pure():
        return SearchOutcome(Verdict.NO, None, {"reason": "not pure"})
    fs = _Facets(K)
    b = Budget(budget)
    dead: set[int] = set()
    path: list[int] = []

    def rec(used: int) -> bool:
        if used == fs.all:
            return True
        if used in dead:
            b.memo_hits += 1
            return False
        b.tick()
        for t in fs.extensions(used):
            path.append(t)
            if rec(used | 1 << t):
                return True
            path.pop()
        dead.add(used)
        return False

    try:
        found = rec(0)
    except (BudgetExhausted, RecursionError):
        return SearchOutcome(Verdict.INDETERMINATE, None, b.stats())
    if found:
        return SearchOutcome(Verdict.YES, [verts(fs.masks[t]) for t in path], b.stats())
    return SearchOutcome(Verdict.NO, None, b.stats())


def is_extendably_shellable(K: SimplicialComplex,
                            budget: int | None = DEFAULT_SHELLING_BUDGET) -> SearchOutcome:
    """Yes iff every partial shelling extends to a full one.

    No comes with a stuck partial shelling as witness.
    """
    if K.is_empty():
        return SearchOutcome(Verdict.YES)
    if not K.is_pure():
        return SearchOutcome(Verdict.NO, None, {"reason": "not pure"})
    fs = _Facets(K)
    b = Budget(budget)
    parent: dict[int, tuple[int, int]] = {0: (-1, -1)}
    stack = [0]
    try:
        while stack:
            used = stack.pop()
            b.tick()
            if used == fs.all:
                continue
            ext = fs.extensions(used)
            if not ext:
                order = []
                u = used
                while u:
                    prev, t = parent[u]
                    order.append(verts(fs.masks[t]))
                    u = prev
                return SearchOutcome(Verdict.NO, order[::-1], b.stats())
            for t in ext:
                nxt = used | 1 << t
                if nxt in parent:
                    b.memo_hits += 1
                    continue
                parent[nxt] = (used, t)
                stack.append(nxt)
    except BudgetExhausted:
        return SearchOutcome(Verdict.INDETERMINATE, None, b.stats())
    return SearchOutcome(Verdict.YES, None, b.stats())


# -- shelling to collapse -----------------------------------------------------

def _interval_pairs(F: int, R: int) -> list[tuple[int, int]]:
    """Collapse the faces G with R <= G <= F (G nonempty), keeping none of them
    unless R is empty, in which case the lowest vertex of F survives.

    Pairs G - x with G for a fixed x in F - R, larger cofaces first and
    lexicographic within a dimension.
    """
    free = F & ~R
    x = free & -free
    tops = [G for G in submasks(F) if G & R == R and G & x and G != x]
    tops.sort(key=lambda G: (-popcount(G), verts(G)))
    return [(G ^ x, G) for G in tops]


def collapse_start(K: SimplicialComplex, order: Sequence) -> SimplicialComplex:
    """The complex a :func:`shelling_to_collapse` certificate starts from.

    ``K`` itself, or ``K`` minus its last facet when that facet closes up
    (the sphere case).
    """
    masks = [mask(f) for f in order]
    fs = _Facets(K)
    pos = {m: i for i, m in enumerate(fs.masks)}
    used = sum(1 << pos[m] for m in masks[:-1])
    if len(masks) > 1 and fs.restriction(used, pos[masks[-1]]) == masks[-1]:
        return K.delete_open_facets([masks[-1]])
    return K


def shelling_to_collapse(K: SimplicialComplex, order: Sequence) -> CollapseCertificate:
    """Collapse a shellable contractible complex facet by facet, last first.

    Each facet is removed together with the faces it added to the earlier
    ones, starting with a free ridge.  When the final facet adds only itself
    (a shelled sphere) it is skipped, and the certificate applies to ``K``
    minus that facet; see :func:`collapse_start`.
    """
    bad = check_shelling(K, order)
    if bad is not None:
        raise InvalidShelling(bad, "order violates the shelling condition")
    fs = _Facets(K)
    pos = {m: i for i, m in enumerate(fs.masks)}
    masks = [mask(f) for f in order]
    restr = [0]
    used = 1 << pos[masks[0]]
    for m in masks[1:]:
        restr.append(fs.restriction(used, pos[m]))
        used |= 1 << pos[m]
    steps: list[tuple[int, int]] = []
    last = len(masks) - 1
    for k in range(last, -1, -1):
        F, R = masks[k], restr[k]
        if R == F:
            if k != last:
                raise InvalidShelling(k, "facet adds no free face; complex is not contractible")
            continue
        steps.extend(_interval_pairs(F, R))
    return CollapseCertificate(tuple(CollapseStep(verts(f), verts(F)) for f, F in steps))


# -- constructibility ---------------------------------------------------------

def _closure(facets) -> set[int]:
    out: set[int] = set()
    for F in facets:
        if F not in out:
            out.update(submasks(F))
    return out


def _euler(faces: set[int]) -> int:
    return sum(1 if popcount(f) % 2 else -1 for f in faces)


def _betti(facets) -> tuple[int, ...]:
    return homology_z2(SimplicialComplex.from_masks(facets))


class _Constructibility:
    """Memoized test over facet sets of any dimension.

    Necessary conditions prune a split K = K1 u K2 before recursing: both
    sides strongly connected, with reduced homology only in the top degree
    d; by Mayer-Vietoris their top Betti numbers add up to at most that of
    K, and the (d-1)-dimensional intersection carries the difference.
    """

    def __init__(self, budget: Budget):
        self.b = budget
        self.memo: dict[frozenset[int], bool] = {}

    def check(self, facets: frozenset[int]) -> bool:
        hit = self.memo.get(facets)
        if hit is not None:
            self.b.memo_hits += 1
            return hit
        res = self._check(facets)
        self.memo[facets] = res
        return res

    def _check(self, facets: frozenset[int]) -> bool:
        self.b.tick()
        if len(facets) <= 1:
            return True
        fl = sorted(facets, key=verts)
        d = popcount(fl[0]) - 1
        if any(popcount(F) - 1 != d for F in fl):
            return False
        if d == 0:
            return True
        n = len(fl)
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if popcount(fl[i] & fl[j]) == d:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        full = (1 << n) - 1
        if not _connected(adj, full):
            return False
        if d == 1:
            return True
        betti = _betti(fl)
        if any(betti[:d]):
            return False
        top = betti[d]
        sign = -1 if d % 2 else 1
        side_cache: dict[int, int | None] = {}

        def side_top(sub: int) -> int | None:
            """Top Betti number of a side, or None if it cannot be constructible."""
            if sub in side_cache:
                return side_cache[sub]
            fsub = [fl[i] for i in range(n) if sub >> i & 1]
            red_chi = _euler(_closure(fsub)) - 1
            out = None
            if red_chi * sign >= 0 and red_chi * sign <= top:
                bs = _betti(fsub)
                if not any(bs[:d]):
                    out = bs[d]
            side_cache[sub] = out
            return out

        for s1 in _connected_subsets(adj, full, 1):
            s2 = full & ~s1
            if not s2 or not _connected(adj, s2):
                continue
            self.b.tick()
            t1 = side_top(s1)
            if t1 is None:
                continue
            t2 = side_top(s2)
            if t2 is None or t1 + t2 > top:
                continue
            f1 = [fl[i] for i in range(n) if s1 >> i & 1]
            f2 = [fl[i] for i in range(n) if s2 >> i & 1]
            inter = _closure(f1) & _closure(f2)
            imax = _maximal(inter)
            if not imax or any(popcount(F) != d for F in imax):
                continue
            if not self.check(frozenset(imax)):
                continue
            if self.check(frozenset(f1)) and self.check(frozenset(f2)):
                return True
        return False


def _maximal(faces: set[int]) -> list[int]:
    return [f for f in faces if not any(g != f and g & f == f for g in faces)]


def _connected(adj: list[int], sub: int) -> bool:
    if not sub:
        return True
    start = sub & -sub
    seen = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        nb = adj[low.bit_length() - 1] & sub & ~seen
        seen |= nb
        frontier |= nb
    return seen == sub


def _connected_subsets(adj: list[int], allowed: int, start: int):
    """Every connected vertex set inside ``allowed`` that contains ``start``,
    each exactly once, smaller extensions first along each branch."""

    def rec(cur: int, ext: int, excl: int):
        yield cur
        while ext:
            low = ext & -ext
            ext ^= low
            v = low.bit_length() - 1
            nxt = ext | (adj[v] & allowed & ~cur & ~excl & ~low)
            yield from rec(cur | low, nxt, excl)
            excl |= low

    first = start.bit_length() - 1
    yield from rec(start, adj[first] & allowed, start)


def is_constructible(K: SimplicialComplex, budget: int | None = DEFAULT_SHELLING_BUDGET) -> SearchOutcome:
    if K.is_empty():
        return SearchOutcome(Verdict.YES)
    if not K.is_pure():
        return SearchOutcome(Verdict.NO, None, {"reason": "not pure"})
    b = Budget(budget)
    engine = _Constructibility(b)
    try:
        ok = engine.check(frozenset(K.facet_masks))
    except BudgetExhausted:
        return SearchOutcome(Verdict.INDETERMINATE, None, b.stats())
    return SearchOutcome(Verdict.YES if ok else Verdict.NO, None, b.stats())
