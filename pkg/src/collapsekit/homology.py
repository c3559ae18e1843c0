"""Exact simplicial homology over Z/2 and Z, and Reisner's criterion."""
from __future__ import annotations

from dataclasses import dataclass

from .complex import SimplicialComplex, dim_of, verts


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    reduced: bool = True

    def is_trivial(self) -> bool:
        return not any(self.betti) and not any(self.torsion)


def _ordered_faces(K: SimplicialComplex, d: int) -> list[int]:
    return sorted(K.faces_of_dim(d), key=verts)


# -- Z/2 --------------------------------------------------------------------

def _rank_z2(rows: list[int]) -> int:
    """Rank of a 0/1 matrix given as integer row bitsets."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                rank += 1
                break
            r ^= p
    return rank


def boundary_rank_z2(K: SimplicialComplex, d: int, augmented: bool = False) -> int:
    """Rank of the mod-2 boundary map from d-faces to (d-1)-faces."""
    if d == 0:
        return 1 if augmented and K.faces_of_dim(0) else 0
    lower = {f: i for i, f in enumerate(_ordered_faces(K, d - 1))}
    rows = []
    for F in K.faces_of_dim(d):
        r = 0
        x = F
        while x:
            low = x & -x
            r |= 1 << lower[F ^ low]
            x ^= low
        rows.append(r)
    return _rank_z2(rows)


def homology_z2(K: SimplicialComplex, reduced: bool = True) -> tuple[int, ...]:
    """Betti numbers over Z/2 in dimensions 0..dim K."""
    top = K.dim
    if top < 0:
        return ()
    ranks = [boundary_rank_z2(K, d, augmented=reduced) for d in range(top + 2)]
    fv = K.f_vector()
    return tuple(fv[d] - ranks[d] - ranks[d + 1] for d in range(top + 1))


# -- integers ---------------------------------------------------------------

def boundary_matrix(K: SimplicialComplex, d: int) -> list[list[int]]:
    """Dense integer boundary matrix, rows (d-1)-faces, columns d-faces.

    Faces are ordered lexicographically; the i-th vertex omitted carries the
    sign (-1)**i.
    """
    cols = _ordered_faces(K, d)
    rows = _ordered_faces(K, d - 1) if d > 0 else []
    index = {f: i for i, f in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, F in enumerate(cols):
        for i, v in enumerate(verts(F)):
            M[index[F ^ (1 << v)]][j] = -1 if i % 2 else 1
    return M


def smith_diagonal(M: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    A = [row[:] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                # divisibility: fold a non-multiple entry into the pivot row
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
                continue
            # move the smallest remainder into the pivot position
            best = None
            for i in range(t, m):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), i, t)
            for j in range(t, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, pi, pj = best
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def homology_integral(K: SimplicialComplex, reduced: bool = True) -> HomologyProfile:
    top = K.dim
    if top < 0:
        return HomologyProfile((), (), reduced)
    fv = K.f_vector()
    diags = [[] for _ in range(top + 2)]
    for d in range(1, top + 1):
        diags[d] = smith_diagonal(boundary_matrix(K, d))
    if reduced and fv[0]:
        diags[0] = [1]
    betti = []
    torsion = []
    for d in range(top + 1):
        rank_in = len(diags[d + 1])
        rank_out = len(diags[d])
        betti.append(fv[d] - rank_out - rank_in)
        torsion.append(tuple(x for x in diags[d + 1] if x > 1))
    return HomologyProfile(tuple(betti), tuple(torsion), reduced)


def check_boundary_squared(K: SimplicialComplex) -> bool:
    """True iff every composite of consecutive boundary maps vanishes."""
    for d in range(2, K.dim + 1):
        A = boundary_matrix(K, d - 1)
        B = boundary_matrix(K, d)
        for i in range(len(A)):
            for j in range(len(B[0]) if B else 0):
                if sum(A[i][k] * B[k][j] for k in range(len(B))):
                    return False
    return True


# -- Cohen-Macaulay -----------------------------------------------------------

def _reduced_profile_with_empty(L: SimplicialComplex) -> tuple[tuple[int, ...], tuple]:
    # the empty link {emptyset} has reduced homology Z in degree -1 only
    if L.is_empty():
        return (), ()
    h = homology_integral(L, reduced=True)
    return h.betti, h.torsion


def is_cohen_macaulay(K: SimplicialComplex) -> bool:
    """Reisner's criterion with integer coefficients.

    Every link (the empty face's link is K) must have vanishing reduced
    homology below its dimension and torsion-free top homology; this gives
    the Cohen-Macaulay property over every field at once.
    """
    if not K.is_pure():
        return False
    faces = [0] + sorted(K.faces, key=lambda f: (dim_of(f), verts(f)))
    for f in faces:
        L = K if f == 0 else K.link(f)
        betti, torsion = _reduced_profile_with_empty(L)
        top = L.dim
        for i in range(top):
            if betti[i] or torsion[i]:
                return False
        if top >= 0 and torsion[top]:
            return False
    return True
