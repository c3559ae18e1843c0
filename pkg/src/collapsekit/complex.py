"""Immutable simplicial complexes over at most 64 integer vertices.

Faces are stored internally as integer bitmasks (bit ``v`` set when vertex
``v`` belongs to the face).  The public API accepts and returns faces as
sorted tuples of vertex ids; the ``mask``/``verts`` helpers convert between
the two views.
"""
from __future__ import annotations

import enum
import hashlib
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

MAX_VERTICES = 64


class ComplexError(ValueError):
    """Raised on malformed faces or on operations with unmet preconditions."""


def mask(face: Iterable[int]) -> int:
    m = 0
    for v in face:
        if not 0 <= v < MAX_VERTICES:
            raise ComplexError(f"vertex {v} out of range 0..{MAX_VERTICES - 1}")
        bit = 1 << v
        if m & bit:
            raise ComplexError(f"duplicate vertex {v} in face {tuple(face)}")
        m |= bit
    return m


def verts(m: int) -> tuple[int, ...]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return tuple(out)


def popcount(m: int) -> int:
    return bin(m).count("1")


def dim_of(m: int) -> int:
    return popcount(m) - 1


def submasks(m: int):
    """All nonempty submasks of ``m`` (including ``m`` itself)."""
    s = m
    while s:
        yield s
        s = (s - 1) & m


def ridges_of(m: int):
    """Codimension-one faces of the simplex ``m``."""
    x = m
    while x:
        low = x & -x
        yield m ^ low
        x ^= low


def face_key(m: int) -> tuple[int, ...]:
    return verts(m)


class ManifoldType(enum.Enum):
    SPHERE2 = "Sphere2"
    BALL2 = "Ball2"
    MANIFOLD3_CLOSED = "Manifold3Closed"
    MANIFOLD3_WITH_BOUNDARY = "Manifold3WithBoundary"
    OTHER = "Other"


@dataclass(frozen=True)
class DualGraph:
    nodes: tuple[tuple[int, ...], ...]
    # (i, j, ridge) with i < j indexing into ``nodes``
    edges: tuple[tuple[int, int, tuple[int, ...]], ...]

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {i: [] for i in range(len(self.nodes))}
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in adj[i]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(self.nodes)


class SimplicialComplex:
    """A finite simplicial complex, stored as its full (closed) face set.

    Construct with :meth:`from_facets`.  Instances are immutable and hash by
    their face set, so two complexes compare equal iff they have the same
    labeled faces.
    """

    __slots__ = ("_faces", "_facets", "_by_dim", "_hash")

    def __init__(self, faces: Iterable[int] = (), *, _closed: bool = False):
        faces = frozenset(faces)
        if not _closed:
            closed = set()
            for f in faces:
                if f not in closed:
                    closed.update(submasks(f))
            faces = frozenset(closed)
        self._faces = faces
        by_dim: dict[int, set[int]] = defaultdict(set)
        for f in faces:
            by_dim[dim_of(f)].add(f)
        self._by_dim = {d: frozenset(s) for d, s in by_dim.items()}
        self._facets: frozenset[int] | None = None
        self._hash: int | None = None

    # -- construction ----------------------------------------------------
    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        masks = []
        for f in facets:
            f = tuple(f)
            if not f:
                raise ComplexError("empty face is not a valid facet")
            masks.append(mask(f))
        return cls(masks)

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "SimplicialComplex":
        return cls(masks)

    @classmethod
    def simplex(cls, k: int) -> "SimplicialComplex":
        return cls.from_facets([range(k + 1)])

    @classmethod
    def simplex_boundary(cls, k: int) -> "SimplicialComplex":
        """Boundary of the ``k``-simplex, a (k-1)-sphere on k+1 vertices."""
        return cls.from_facets(combinations(range(k + 1), k))

    # -- basic queries ---------------------------------------------------
    @property
    def faces(self) -> frozenset[int]:
        return self._faces

    @property
    def facet_masks(self) -> frozenset[int]:
        if self._facets is None:
            fs = set()
            for d in sorted(self._by_dim, reverse=True):
                for f in self._by_dim[d]:
                    if not any((g & f) == f for g in fs):
                        fs.add(f)
            self._facets = frozenset(fs)
        return self._facets

    @property
    def facets(self) -> list[tuple[int, ...]]:
        return sorted(verts(f) for f in self.facet_masks)

    def faces_of_dim(self, d: int) -> frozenset[int]:
        return self._by_dim.get(d, frozenset())

    @property
    def dim(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    @property
    def vertex_mask(self) -> int:
        m = 0
        for f in self.faces_of_dim(0):
            m |= f
        return m

    @property
    def vertices(self) -> tuple[int, ...]:
        return verts(self.vertex_mask)

    @property
    def num_vertices(self) -> int:
        return len(self.faces_of_dim(0))

    def is_empty(self) -> bool:
        return not self._faces

    def is_pure(self) -> bool:
        d = self.dim
        return all(dim_of(f) == d for f in self.facet_masks)

    def __contains__(self, face) -> bool:
        if isinstance(face, int):
            return face in self._faces
        return mask(face) in self._faces

    def __len__(self) -> int:
        return len(self._faces)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self._faces == other._faces

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._faces)
        return self._hash

    def __repr__(self) -> str:
        fs = self.facets
        shown = ", ".join("".join(map(str, f)) if self.vertex_mask < 1 << 10 else str(f) for f in fs[:8])
        more = ", ..." if len(fs) > 8 else ""
        return f"SimplicialComplex(f={self.f_vector()}, facets=[{shown}{more}])"

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._faces <= other._faces

    # -- counts ----------------------------------------------------------
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_of_dim(d)) for d in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.f_vector()))

    def degree(self, face: int) -> int:
        """Number of facets containing ``face``."""
        return sum(1 for g in self.facet_masks if g & face == face)

    def content_hash(self) -> str:
        """sha256 of the canonical facet-list text of this labeled complex."""
        text = "".join(" ".join(map(str, f)) + "\n" for f in self.facets)
        return hashlib.sha256(text.encode("ascii")).hexdigest()

    # -- local structure -------------------------------------------------
    def _as_mask(self, face) -> int:
        return face if isinstance(face, int) else mask(face)

    def link(self, face) -> "SimplicialComplex":
        f = self._as_mask(face)
        if f not in self._faces:
            raise ComplexError(f"{verts(f)} is not a face of the complex")
        return SimplicialComplex(
            (g ^ f for g in self.facet_masks if g & f == f and g != f)
        )

    def star(self, face) -> "SimplicialComplex":
        f = self._as_mask(face)
        if f not in self._faces:
            raise ComplexError(f"{verts(f)} is not a face of the complex")
        return SimplicialComplex(g for g in self.facet_masks if g & f == f)

    def ridge_degrees(self) -> dict[int, int]:
        """For a pure complex: number of facets through each (d-1)-face."""
        deg: dict[int, int] = {r: 0 for r in self.faces_of_dim(self.dim - 1)}
        for F in self.faces_of_dim(self.dim):
            for r in ridges_of(F):
                deg[r] += 1
        return deg

    def boundary_complex(self) -> "SimplicialComplex":
        if not self.is_pure():
            raise ComplexError("boundary_complex requires a pure complex")
        if self.dim <= 0:
            return SimplicialComplex()
        return SimplicialComplex(r for r, c in self.ridge_degrees().items() if c == 1)

    def dual_graph(self) -> DualGraph:
        if not self.is_pure():
            raise ComplexError("dual_graph requires a pure complex")
        nodes = sorted(self.facet_masks, key=verts)
        index = {F: i for i, F in enumerate(nodes)}
        by_ridge: dict[int, list[int]] = defaultdict(list)
        for F in nodes:
            for r in ridges_of(F):
                by_ridge[r].append(index[F])
        edges = []
        for r, inc in by_ridge.items():
            for i, j in combinations(sorted(inc), 2):
                edges.append((i, j, verts(r)))
        edges.sort()
        return DualGraph(tuple(verts(F) for F in nodes), tuple(edges))

    def is_connected(self) -> bool:
        vs = list(self.faces_of_dim(0))
        if not vs:
            return True
        adj: dict[int, int] = defaultdict(int)
        for e in self.faces_of_dim(1):
            a, b = verts(e)
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        start = vs[0].bit_length() - 1
        seen = 1 << start
        frontier = 1 << start
        while frontier:
            new = 0
            for v in verts(frontier):
                new |= adj[v]
            frontier = new & ~seen
            seen |= new
        return seen == self.vertex_mask

    # -- constructions ---------------------------------------------------
    def skeleton(self, d: int) -> "SimplicialComplex":
        return SimplicialComplex((f for f in self._faces if dim_of(f) <= d), _closed=True)

    def _check_facets(self, removed) -> set[int]:
        ms = {self._as_mask(f) for f in removed}
        bad = [verts(m) for m in ms if m not in self.facet_masks]
        if bad:
            raise ComplexError(f"not facets of the complex: {sorted(bad)}")
        return ms

    def delete_open_facets(self, removed) -> "SimplicialComplex":
        """Remove the given facets only; every proper face stays."""
        ms = self._check_facets(removed)
        return SimplicialComplex(self._faces - ms, _closed=True)

    def delete_facets_generated(self, removed) -> "SimplicialComplex":
        """Subcomplex generated by the facets that remain."""
        ms = self._check_facets(removed)
        return SimplicialComplex(self.facet_masks - ms)

    def remove_facets(self, removed, semantics: str = "open") -> "SimplicialComplex":
        if semantics == "open":
            return self.delete_open_facets(removed)
        if semantics == "generated":
            return self.delete_facets_generated(removed)
        raise ComplexError(f"unknown semantics {semantics!r}")

    def relabel(self, mapping) -> "SimplicialComplex":
        """Apply an injective vertex map (dict or sequence indexed by vertex)."""
        get = mapping.__getitem__
        images = [get(v) for v in self.vertices]
        if len(set(images)) != len(images):
            raise ComplexError("relabeling is not injective on the vertex set")
        out = []
        for F in self.facet_masks:
            m = 0
            for v in verts(F):
                m |= 1 << get(v)
            out.append(m)
        return SimplicialComplex(out)

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self._faces | other._faces, _closed=True)

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self._faces & other._faces, _closed=True)


def product_with_interval(K: SimplicialComplex, vertex_order: Sequence[int]) -> SimplicialComplex:
    """Staircase triangulation of ``K x [0,1]``.

    Vertex ``v`` at position ``p`` in ``vertex_order`` becomes ``p`` in the
    bottom copy and ``p + n`` in the top copy, ``n`` being the vertex count.
    """
    order = list(vertex_order)
    if sorted(order) != list(K.vertices):
        raise ComplexError("vertex_order must list every vertex of K exactly once")
    n = len(order)
    if 2 * n > MAX_VERTICES:
        raise ComplexError("product would exceed the vertex limit")
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for F in K.facet_masks:
        ps = sorted(pos[v] for v in verts(F))
        for i in range(len(ps)):
            m = 0
            for p in ps[: i + 1]:
                m |= 1 << p
            for p in ps[i:]:
                m |= 1 << (p + n)
            out.append(m)
    return SimplicialComplex(out)


def bottom_copy(K: SimplicialComplex, vertex_order: Sequence[int]) -> SimplicialComplex:
    """The copy ``K x {0}`` inside :func:`product_with_interval` output."""
    return K.relabel({v: i for i, v in enumerate(vertex_order)})


# -- manifold recognition ------------------------------------------------

def _graph_is_path_or_cycle(L: SimplicialComplex) -> str | None:
    """'cycle', 'path' or None for a 1-dimensional link."""
    if L.dim != 1 or not L.is_pure() or not L.is_connected():
        return None
    deg: dict[int, int] = defaultdict(int)
    for e in L.faces_of_dim(1):
        for v in verts(e):
            deg[v] += 1
    if any(c > 2 for c in deg.values()):
        return None
    ones = sum(1 for c in deg.values() if c == 1)
    if ones == 0:
        return "cycle"
    if ones == 2:
        return "path"
    return None


def classify_small_manifold(K: SimplicialComplex) -> ManifoldType:
    d = K.dim
    if d > 3 or d < 2 or not K.is_pure():
        return ManifoldType.OTHER
    if d == 2:
        if not K.is_connected():
            return ManifoldType.OTHER
        if any(c > 2 for c in K.ridge_degrees().values()):
            return ManifoldType.OTHER
        for v in K.faces_of_dim(0):
            if _graph_is_path_or_cycle(K.link(v)) is None:
                return ManifoldType.OTHER
        bd = K.boundary_complex()
        chi = K.euler_characteristic()
        if bd.is_empty():
            return ManifoldType.SPHERE2 if chi == 2 else ManifoldType.OTHER
        if bd.is_connected() and chi == 1:
            return ManifoldType.BALL2
        return ManifoldType.OTHER
    if not K.is_connected():
        return ManifoldType.OTHER
    if any(c > 2 for c in K.ridge_degrees().values()):
        return ManifoldType.OTHER
    for v in K.faces_of_dim(0):
        if classify_small_manifold(K.link(v)) not in (ManifoldType.SPHERE2, ManifoldType.BALL2):
            return ManifoldType.OTHER
    if K.boundary_complex().is_empty():
        return ManifoldType.MANIFOLD3_CLOSED
    return ManifoldType.MANIFOLD3_WITH_BOUNDARY
