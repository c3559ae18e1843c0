"""Elementary collapses, certificates and the collapsibility searches.

Search states are integer bitsets over a fixed indexing of the start
complex's faces.  Memo tables key on the bitset itself, so a hash collision
can never merge two distinct states (Python set lookups compare the full
value after the hash).

Exhaustive searches only explore *dimension-ordered* collapse sequences:
every sequence of elementary collapses can be rearranged so that collapses
with higher-dimensional cofaces come first (see :func:`normalize_certificate`
for the adjacent-swap argument), so this loses no reachable complex while
cutting the state space drastically.
"""
from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from typing import Iterable

from .complex import ComplexError, SimplicialComplex, dim_of, mask, popcount, ridges_of, verts
from .search import Budget, BudgetExhausted, SearchOutcome, Verdict

DEFAULT_EXHAUSTIVE_BUDGET = 10**7
DEFAULT_RESTARTS = 10**4


@dataclass(frozen=True)
class CollapseStep:
    free_face: tuple[int, ...]
    coface: tuple[int, ...]

    def __iter__(self):
        return iter((self.free_face, self.coface))


@dataclass(frozen=True)
class CollapseCertificate:
    steps: tuple[CollapseStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    @classmethod
    def of(cls, pairs: Iterable) -> "CollapseCertificate":
        return cls(tuple(CollapseStep(tuple(f), tuple(F)) for f, F in pairs))


class InvalidStep(ComplexError):
    pass


@dataclass
class ReplayResult:
    valid: bool
    complex: SimplicialComplex | None = None
    index: int | None = None
    reason: str = ""


@dataclass
class StuckCore:
    complex: SimplicialComplex
    certificate: CollapseCertificate


# -- single-step operations -----------------------------------------------

def _cofaces(faces: Iterable[int], f: int) -> list[int]:
    return [g for g in faces if g != f and g & f == f]


def _check_step(faces: frozenset[int] | set[int], f: int, F: int) -> str | None:
    if f not in faces:
        return f"free face {verts(f)} is not in the complex"
    if F not in faces:
        return f"coface {verts(F)} is not in the complex"
    if F & f != f or dim_of(F) != dim_of(f) + 1:
        return f"{verts(F)} does not cover {verts(f)}"
    co = _cofaces(faces, f)
    if co != [F]:
        return f"{verts(f)} is not free: proper cofaces {sorted(verts(g) for g in co)}"
    return None


def free_faces(K: SimplicialComplex) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (free face, unique coface) pairs, sorted by the free face."""
    out = []
    for f in K.faces:
        covers = [F for F in K.faces_of_dim(dim_of(f) + 1) if F & f == f]
        if len(covers) == 1:
            # a single cover is the only proper coface: anything larger would
            # contain a second cover by closure
            out.append((verts(f), verts(covers[0])))
    out.sort()
    return out


def elementary_collapse(K: SimplicialComplex, step) -> SimplicialComplex:
    f, F = (mask(x) for x in step)
    err = _check_step(K.faces, f, F)
    if err:
        raise InvalidStep(err)
    return SimplicialComplex(K.faces - {f, F}, _closed=True)


def replay_certificate(K: SimplicialComplex, cert) -> ReplayResult:
    """Replay ``cert`` from ``K``, re-checking freeness at every step."""
    faces = set(K.faces)
    for i, (f, F) in enumerate(cert):
        try:
            fm, Fm = mask(f), mask(F)
        except ComplexError as e:
            return ReplayResult(False, index=i, reason=str(e))
        err = _check_step(faces, fm, Fm)
        if err:
            return ReplayResult(False, index=i, reason=err)
        faces -= {fm, Fm}
    return ReplayResult(True, SimplicialComplex(faces, _closed=True))


def normalize_certificate(K: SimplicialComplex, cert) -> CollapseCertificate:
    """Reorder steps by non-increasing coface dimension.

    A step whose coface has dimension k followed by one of dimension > k
    can always be swapped: neither pair is a coface of the other's free
    face.  A stable sort is a sequence of such swaps, so the result replays
    to the same complex.
    """
    cert = CollapseCertificate.of(cert)
    res = replay_certificate(K, cert)
    if not res.valid:
        raise InvalidStep(f"step {res.index}: {res.reason}")
    return CollapseCertificate(tuple(sorted(cert.steps, key=lambda s: -len(s.coface))))


# -- indexed state machinery ------------------------------------------------

class FaceIndex:
    """Fixed numbering of the faces of a start complex."""

    def __init__(self, K: SimplicialComplex):
        self.complex = K
        faces = sorted(K.faces, key=lambda m: (dim_of(m), verts(m)))
        self.faces = faces
        self.index = {m: i for i, m in enumerate(faces)}
        self.dim = [dim_of(m) for m in faces]
        n = len(faces)
        self.covers: list[list[int]] = [[] for _ in range(n)]
        self.bounds: list[list[int]] = [[] for _ in range(n)]
        for j, F in enumerate(faces):
            if self.dim[j] == 0:
                continue
            for r in ridges_of(F):
                i = self.index[r]
                self.covers[i].append(j)
                self.bounds[j].append(i)
        self.cover_mask = [sum(1 << j for j in c) for c in self.covers]
        self.full = (1 << n) - 1

    def state_of(self, H: SimplicialComplex) -> int:
        s = 0
        for m in H.faces:
            try:
                s |= 1 << self.index[m]
            except KeyError:
                raise ComplexError(f"{verts(m)} is not a face of the start complex") from None
        return s

    def complex_of(self, state: int) -> SimplicialComplex:
        return SimplicialComplex((self.faces[i] for i in _bits(state)), _closed=True)

    def free_pairs(self, state: int, protected: int = 0) -> list[tuple[int, int]]:
        out = []
        cm = self.cover_mask
        s = state & ~protected
        for i in _bits(s):
            c = state & cm[i]
            if c and not c & (c - 1):
                j = c.bit_length() - 1
                if not (protected >> j) & 1:
                    out.append((i, j))
        return out

    def step(self, i: int, j: int) -> CollapseStep:
        return CollapseStep(verts(self.faces[i]), verts(self.faces[j]))

    def top_dim(self, state: int) -> int:
        if not state:
            return -1
        return self.dim[state.bit_length() - 1]


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _is_point(idx: FaceIndex, state: int) -> bool:
    return state != 0 and not state & (state - 1) and idx.dim[state.bit_length() - 1] == 0


# -- greedy ---------------------------------------------------------------

def _greedy_run(idx: FaceIndex, state: int, rng: random.Random | None,
                prefer_top: bool, protected: int = 0) -> tuple[list[tuple[int, int]], int]:
    """Collapse until stuck.  ``rng=None`` picks the first free pair."""
    present = [bool((state >> i) & 1) for i in range(len(idx.faces))]
    cnt = [sum(1 for j in idx.covers[i] if present[j]) for i in range(len(idx.faces))]
    prot = [bool((protected >> i) & 1) for i in range(len(idx.faces))]

    def cover_of(i):
        for j in idx.covers[i]:
            if present[j]:
                return j
        return -1

    cand = {i for i in range(len(present)) if present[i] and cnt[i] == 1 and not prot[i]}
    cand = {i for i in cand if not prot[cover_of(i)]}
    pairs: list[tuple[int, int]] = []
    while cand:
        if prefer_top:
            top = max(idx.dim[i] for i in cand)
            pool = sorted(i for i in cand if idx.dim[i] == top)
        else:
            pool = sorted(cand)
        i = pool[0] if rng is None else rng.choice(pool)
        j = cover_of(i)
        pairs.append((i, j))
        present[i] = present[j] = False
        cand.discard(i)
        cand.discard(j)
        for b in idx.bounds[j] + idx.bounds[i]:
            if not present[b]:
                continue
            cnt[b] -= 1
            if cnt[b] == 1 and not prot[b] and not prot[cover_of(b)]:
                cand.add(b)
            else:
                cand.discard(b)
    final = sum(1 << i for i, p in enumerate(present) if p)
    return pairs, final


def greedy_collapse(K: SimplicialComplex, seed: int | None = None, prefer_top: bool = True,
                    protect: SimplicialComplex | None = None):
    """One maximal collapse sequence; returns (certificate, stuck complex)."""
    idx = FaceIndex(K)
    protected = idx.state_of(protect) if protect is not None else 0
    rng = None if seed is None else random.Random(seed)
    pairs, final = _greedy_run(idx, idx.full, rng, prefer_top, protected)
    return CollapseCertificate(tuple(idx.step(i, j) for i, j in pairs)), idx.complex_of(final)


# -- exhaustive ordered search ----------------------------------------------

class _OrderedSearch:
    """DFS over dimension-ordered collapse sequences, memoizing dead states."""

    def __init__(self, idx: FaceIndex, budget: Budget, target: int | None,
                 dim2_greedy: bool):
        self.idx = idx
        self.budget = budget
        self.target = target  # None means "any single vertex"
        self.protected = target or 0
        self.dim2_greedy = dim2_greedy and target is None
        self.dead: set[tuple[int, int]] = set()
        self.path: list[tuple[int, int]] = []

    def _phase_done(self, state: int, d: int) -> bool:
        idx = self.idx
        rest = state & ~self.protected
        return not any(idx.dim[i] == d for i in _bits(rest))

    def _finish_graph(self, state: int) -> bool:
        # dimension <= 1, collapsing to a point: a tree, removed leaf by leaf
        idx = self.idx
        pairs, final = _greedy_run(idx, state, None, prefer_top=False)
        if _is_point(idx, final):
            self.path.extend(pairs)
            return True
        return False

    def run(self, state: int, d: int) -> bool:
        key = (state, d)
        if key in self.dead:
            self.budget.memo_hits += 1
            return False
        self.budget.tick()
        idx = self.idx
        if self.target is None:
            if _is_point(idx, state):
                return True
            if d <= 1 or (d == 2 and self.dim2_greedy):
                mark = len(self.path)
                if d <= 1:
                    ok = self._finish_graph(state)
                else:
                    pairs, final = _greedy_run(idx, state, None, prefer_top=True)
                    ok = _is_point(idx, final)
                    if ok:
                        self.path.extend(pairs)
                if not ok:
                    del self.path[mark:]
                    self.dead.add(key)
                return ok
        elif state == self.target:
            return True
        if d < 0:
            self.dead.add(key)
            return False
        if self._phase_done(state, d):
            ok = self.run(state, d - 1)
            if not ok:
                self.dead.add(key)
            return ok
        for i, j in idx.free_pairs(state, self.protected):
            if idx.dim[j] != d:
                continue
            self.path.append((i, j))
            if self.run(state & ~((1 << i) | (1 << j)), d):
                return True
            self.path.pop()
        self.dead.add(key)
        return False


def _exhaustive(K: SimplicialComplex, H: SimplicialComplex | None, budget: int | None,
                dim2_greedy: bool = True) -> SearchOutcome:
    idx = FaceIndex(K)
    target = idx.state_of(H) if H is not None else None
    b = Budget(budget)
    search = _OrderedSearch(idx, b, target, dim2_greedy)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(idx.faces) + 1000))
    try:
        ok = search.run(idx.full, K.dim)
    except BudgetExhausted:
        return SearchOutcome(Verdict.INDETERMINATE, None, b.stats())
    finally:
        sys.setrecursionlimit(old)
    stats = b.stats()
    if ok:
        cert = CollapseCertificate(tuple(idx.step(i, j) for i, j in search.path))
        return SearchOutcome(Verdict.YES, cert, stats)
    return SearchOutcome(Verdict.NO, None, stats)


def _greedy_restarts(K: SimplicialComplex, H: SimplicialComplex | None, seed: int,
                     restarts: int, prefer_top: bool = True) -> SearchOutcome:
    idx = FaceIndex(K)
    target = idx.state_of(H) if H is not None else None
    protected = target or 0
    rng = random.Random(seed)
    for attempt in range(restarts):
        pairs, final = _greedy_run(idx, idx.full, rng, prefer_top, protected)
        ok = _is_point(idx, final) if target is None else final == target
        if ok:
            cert = CollapseCertificate(tuple(idx.step(i, j) for i, j in pairs))
            return SearchOutcome(Verdict.YES, cert, {"restarts": attempt + 1})
    return SearchOutcome(Verdict.INDETERMINATE, None, {"restarts": restarts})


def collapse_to_point(K: SimplicialComplex, strategy: str = "exhaustive", seed: int = 0,
                      budget: int | None = None) -> SearchOutcome:
    """Decide collapsibility.

    ``strategy="exhaustive"`` answers YES/NO (INDETERMINATE past ``budget``
    search nodes); ``"greedy"`` runs ``budget`` seeded random restarts and
    answers YES or INDETERMINATE.
    """
    if K.is_empty():
        return SearchOutcome(Verdict.NO, None, {})
    if strategy == "exhaustive":
        return _exhaustive(K, None, DEFAULT_EXHAUSTIVE_BUDGET if budget is None else budget)
    if strategy == "greedy":
        return _greedy_restarts(K, None, seed, DEFAULT_RESTARTS if budget is None else budget)
    raise ValueError(f"unknown strategy {strategy!r}")


def collapses_onto(K: SimplicialComplex, H: SimplicialComplex, strategy: str = "exhaustive",
                   seed: int = 0, budget: int | None = None) -> SearchOutcome:
    """Decide whether ``K`` collapses onto its subcomplex ``H`` (same labels)."""
    if not H.is_subcomplex_of(K):
        raise ComplexError("H is not a subcomplex of K")
    if H == K:
        return SearchOutcome(Verdict.YES, CollapseCertificate(), {"nodes": 0})
    if strategy == "exhaustive":
        return _exhaustive(K, H, DEFAULT_EXHAUSTIVE_BUDGET if budget is None else budget)
    if strategy == "greedy":
        return _greedy_restarts(K, H, seed, DEFAULT_RESTARTS if budget is None else budget)
    raise ValueError(f"unknown strategy {strategy!r}")


# -- stuck cores -----------------------------------------------------------

def _reduced_betti_z2(K: SimplicialComplex) -> tuple[int, ...]:
    from .homology import homology_z2

    return homology_z2(K, reduced=True)


def _no_free_subcomplexes(idx: FaceIndex, target: tuple[int, ...], b: Budget):
    """Yield every nonempty subcomplex (as a state) with no free face whose
    reduced mod-2 Betti numbers equal ``target``.

    Faces are decided one dimension at a time from the top.  Within a
    level, a face is free iff exactly one of its covers is kept, so the
    level is a small constraint problem on the ridges.  Kept d-faces can
    only raise the kernel of the d-th boundary map, which bounds b_d from
    below and prunes early.
    """
    nfaces = len(idx.faces)
    by_dim: dict[int, list[int]] = {}
    for i in range(nfaces):
        by_dim.setdefault(idx.dim[i], []).append(i)
    top = max(by_dim) if by_dim else -1
    EMPTY = nfaces  # bit standing for the empty face (augmentation)

    def bvec(i: int) -> int:
        if idx.dim[i] == 0:
            return 1 << EMPTY
        v = 0
        for r in idx.bounds[i]:
            v |= 1 << r
        return v

    bvecs = [bvec(i) for i in range(nfaces)]

    def reduce(pivots: dict[int, int], v: int) -> int:
        while v:
            p = pivots.get(v.bit_length() - 1)
            if p is None:
                return v
            v ^= p
        return 0

    def level(d: int, kept: int, rank_above: int):
        if d < 0:
            if kept:
                yield kept
            return
        faces = by_dim.get(d, [])
        forced, optional = [], []
        for i in faces:
            c = popcount(kept & idx.cover_mask[i])
            if c == 1:
                return
            (forced if c else optional).append(i)
        want = target[d] if d < len(target) else 0
        pivots: dict[int, int] = {}
        kernel = 0
        for i in forced:
            r = reduce(pivots, bvecs[i])
            if r:
                pivots[r.bit_length() - 1] = r
            else:
                kernel += 1
            kept |= 1 << i
        if kernel - rank_above > want:
            return
        ridge_count: dict[int, int] = {}
        for i in forced:
            for r in idx.bounds[i]:
                ridge_count[r] = ridge_count.get(r, 0) + 1
        cofaces_opt: dict[int, list[int]] = {}
        for i in optional:
            for r in idx.bounds[i]:
                cofaces_opt.setdefault(r, []).append(i)

        def dpll(pos_state, kept, pivots, kernel, counts, excluded):
            b.tick()
            undecided = [i for i in optional if not (kept >> i) & 1 and not (excluded >> i) & 1]
            # a ridge kept by exactly one face needs a second one
            pending = None
            for r, c in counts.items():
                if c == 1:
                    opts = [u for u in cofaces_opt.get(r, ()) if u in undecided]
                    if not opts:
                        return
                    if pending is None or len(opts) < len(pending):
                        pending = opts
            if pending is None:
                if not undecided:
                    if kernel - rank_above == want:
                        yield from level(d - 1, kept, len(pivots))
                    return
                choices = [undecided[0]]
                yield from dpll(pos_state, kept, pivots, kernel, counts,
                                excluded | (1 << undecided[0]))
            else:
                choices = pending
            excl = excluded
            for u in choices:
                r = reduce(pivots, bvecs[u])
                k2 = kernel + (0 if r else 1)
                if k2 - rank_above <= want:
                    p2 = dict(pivots)
                    if r:
                        p2[r.bit_length() - 1] = r
                    c2 = dict(counts)
                    for x in idx.bounds[u]:
                        c2[x] = c2.get(x, 0) + 1
                    yield from dpll(pos_state, kept | (1 << u), p2, k2, c2, excl)
                excl |= 1 << u

        yield from dpll(None, kept, pivots, kernel, ridge_count, 0)

    yield from level(top, 0, 0)


def find_stuck_cores(K: SimplicialComplex, mode: str = "sampled", runs: int = 10**4,
                     seed: int = 0, budget: int | None = None,
                     prefer_top: bool = False) -> tuple[list[StuckCore], Verdict]:
    """Terminal complexes of maximal collapse sequences, one per iso class.

    ``mode="sampled"`` keeps the end points of ``runs`` seeded random
    greedy collapses.  ``mode="exhaustive"`` lists every subcomplex without
    free faces that has the homology of ``K`` and keeps those ``K``
    collapses onto; it is complete, but both stages share ``budget``.

    Returns ``(cores, status)`` with ``status`` INDETERMINATE when the
    exhaustive run hit its budget (the list is then partial), else YES.
    """
    from .iso import canonical_key

    found: dict[SimplicialComplex, CollapseCertificate] = {}
    status = Verdict.YES
    if mode == "sampled":
        idx = FaceIndex(K)
        rng = random.Random(seed)
        for _ in range(runs):
            pairs, final = _greedy_run(idx, idx.full, rng, prefer_top)
            C = idx.complex_of(final)
            if C not in found:
                found[C] = CollapseCertificate(tuple(idx.step(i, j) for i, j in pairs))
    elif mode == "exhaustive":
        for C, cert in _reachable_stuck(K, budget):
            if cert is None:
                status = Verdict.INDETERMINATE
                break
            found[C] = cert
    else:
        raise ValueError(f"unknown mode {mode!r}")
    by_class: dict[tuple, StuckCore] = {}
    for C in sorted(found, key=lambda c: (len(c), c.facets)):
        key = canonical_key(C)
        if key not in by_class:
            by_class[key] = StuckCore(C, found[C])
    cores = sorted(by_class.values(), key=lambda c: (c.complex.f_vector(), c.complex.facets))
    return cores, status


def _reachable_stuck(K: SimplicialComplex, budget: int | None, skip_points: bool = False):
    """Yield (stuck subcomplex, certificate); (None, None) once out of budget."""
    idx = FaceIndex(K)
    b = Budget(DEFAULT_EXHAUSTIVE_BUDGET if budget is None else budget)
    target = _reduced_betti_z2(K)
    gen = _no_free_subcomplexes(idx, target, b)
    while True:
        try:
            state = next(gen)
        except StopIteration:
            return
        except BudgetExhausted:
            yield None, None
            return
        if skip_points and _is_point(idx, state):
            continue
        H = idx.complex_of(state)
        remaining = None if b.limit is None else max(b.limit - b.nodes, 0)
        out = _exhaustive(K, H, remaining)
        b.nodes += out.stats.get("nodes", 0)
        if out.indeterminate:
            yield None, None
            return
        if out.yes:
            yield H, out.witness


def stuck_states(K: SimplicialComplex, budget: int | None = None) -> tuple[list[StuckCore], Verdict]:
    """Every reachable stuck labeled subcomplex (no isomorphism dedup)."""
    cores, status = [], Verdict.YES
    for C, cert in _reachable_stuck(K, budget):
        if cert is None:
            status = Verdict.INDETERMINATE
            break
        cores.append(StuckCore(C, cert))
    cores.sort(key=lambda c: (c.complex.f_vector(), c.complex.facets))
    return cores, status


def is_extendably_collapsible(K: SimplicialComplex, budget: int | None = None,
                              seed: int = 0, samples: int = 200) -> SearchOutcome:
    """NO comes with a :class:`StuckCore` witness that is not a point.

    A few random greedy runs look for a cheap witness first; YES is only
    returned after the exhaustive stuck-subcomplex search comes up empty.
    """
    idx = FaceIndex(K)
    rng = random.Random(seed)
    for n in range(samples):
        pairs, final = _greedy_run(idx, idx.full, rng, prefer_top=False)
        if not _is_point(idx, final):
            cert = CollapseCertificate(tuple(idx.step(i, j) for i, j in pairs))
            return SearchOutcome(Verdict.NO, StuckCore(idx.complex_of(final), cert),
                                 {"samples": n + 1})
    for C, cert in _reachable_stuck(K, budget, skip_points=True):
        if cert is None:
            return SearchOutcome(Verdict.INDETERMINATE, None, {"samples": samples})
        return SearchOutcome(Verdict.NO, StuckCore(C, cert), {"samples": samples})
    return SearchOutcome(Verdict.YES, None, {"samples": samples})


def greedy_equals_search_dim2(K: SimplicialComplex, budget: int | None = None) -> bool:
    """Compare one first-available greedy run with the exhaustive search."""
    if K.dim > 2:
        raise ComplexError("greedy_equals_search_dim2 needs dim <= 2")
    idx = FaceIndex(K)
    _, final = _greedy_run(idx, idx.full, None, prefer_top=False)
    greedy_yes = _is_point(idx, final)
    out = _exhaustive(K, None, DEFAULT_EXHAUSTIVE_BUDGET if budget is None else budget,
                      dim2_greedy=False)
    if out.indeterminate:
        raise BudgetExhausted("exhaustive search ran out of budget")
    return greedy_yes == out.yes
