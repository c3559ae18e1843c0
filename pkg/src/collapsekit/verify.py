"""The end-to-end checks behind ``collapsekit verify-paper`` and the
acceptance tests.  Each check returns a :class:`CriterionResult`; nothing
here raises on a failed expectation."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import corpus as cp
from .collapse import (
    CollapseCertificate, FaceIndex, _greedy_run, collapse_to_point, collapses_onto,
    elementary_collapse, find_stuck_cores, free_faces, greedy_equals_search_dim2,
    is_extendably_collapsible, normalize_certificate, replay_certificate,
)
from .complex import ManifoldType, SimplicialComplex, bottom_copy, classify_small_manifold, product_with_interval
from .homology import homology_integral, homology_z2, is_cohen_macaulay
from .iso import are_isomorphic, canonical_form, contains_subcomplex
from .search import Verdict

PASS, FAIL, INDETERMINATE, DEGRADED = "pass", "fail", "indeterminate", "degraded"


@dataclass
class CriterionResult:
    key: str
    status: str
    checks: dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (PASS, DEGRADED)

    def line(self) -> str:
        return f"{self.key} {self.status.upper():13s} {self.seconds:8.2f}s  {self.note}"


@dataclass
class VerifyConfig:
    seed: int = 0
    exhaustive_budget: int = 10**7
    restarts: int = 10**5
    realize_trials: int = 10**6
    tree_samples: int = 50
    property_samples: int = 100
    out: Path | None = None


def _status(checks: dict[str, object]) -> str:
    return PASS if all(v is True for v in checks.values()) else FAIL


def _timed(key: str, fn: Callable[[VerifyConfig], CriterionResult], cfg: VerifyConfig) -> CriterionResult:
    t = time.perf_counter()
    res = fn(cfg)
    res.key = key
    res.seconds = time.perf_counter() - t
    return res


def _failed_names(checks) -> str:
    bad = [k for k, v in checks.items() if v is not True]
    return "failed: " + ", ".join(bad) if bad else ""


# -- A1..A10 -------------------------------------------------------------------

def sphere_checks(cfg: VerifyConfig) -> CriterionResult:
    from .shelling import is_shellable

    S = cp.gs_32()
    c = {
        "f_vector": S.f_vector() == (8, 27, 38, 19),
        "vertex_links_sphere2": all(classify_small_manifold(S.link(v)) is ManifoldType.SPHERE2
                                    for v in S.faces_of_dim(0)),
        "triangles_in_two_tets": set(S.ridge_degrees().values()) == {2},
        "shellable": is_shellable(S).yes,
    }
    return CriterionResult("A1", _status(c), c, note=_failed_names(c))


def ball_checks(cfg: VerifyConfig) -> CriterionResult:
    from .shelling import is_extendably_shellable, is_shellable

    B = cp.ball_B()
    ext = is_extendably_shellable(B)
    point = collapse_to_point(B, budget=cfg.exhaustive_budget)
    replay = replay_certificate(B, point.witness) if point.yes else None
    ec = is_extendably_collapsible(B, budget=cfg.exhaustive_budget, seed=cfg.seed)
    c = {
        "manifold_with_boundary": classify_small_manifold(B) is ManifoldType.MANIFOLD3_WITH_BOUNDARY,
        "boundary_sphere2": classify_small_manifold(B.boundary_complex()) is ManifoldType.SPHERE2,
        "shellable": is_shellable(B).yes,
        "extendably_shellable": ext.yes,
        "collapsible_with_valid_certificate": bool(replay and replay.valid and replay.complex.num_vertices == 1
                                                   and len(replay.complex) == 1),
        "not_extendably_collapsible": ec.no and ec.witness is not None
                                       and not free_faces(ec.witness.complex)
                                       and replay_certificate(B, ec.witness.certificate).complex == ec.witness.complex,
    }
    note = _failed_names(c)
    if not ext.yes and ext.witness:
        note += "; stuck partial shelling " + " ".join("".join(map(str, F)) for F in ext.witness)
    return CriterionResult("A2", _status(c), c, note=note)


def dunce_hat_checks(cfg: VerifyConfig) -> CriterionResult:
    from .shelling import is_constructible, is_shellable

    D = cp.derive_dunce_hat(cfg.exhaustive_budget)
    cons = is_constructible(D, cfg.exhaustive_budget)
    c = {
        "matches_frozen": D == cp.dunce_hat_D(),
        "pure_2d_8_vertices": D.is_pure() and D.dim == 2 and D.num_vertices == 8,
        "euler_1": D.euler_characteristic() == 1,
        "no_free_faces": not free_faces(D),
        "acyclic": homology_integral(D).is_trivial(),
        "not_shellable": is_shellable(D).no,
        "cohen_macaulay": is_cohen_macaulay(D),
        "in_gs_32": contains_subcomplex(cp.gs_32(), D) is not None,
        "in_ball_B": contains_subcomplex(cp.ball_B(), D) is not None,
        "not_constructible": cons.no or cons.indeterminate,
    }
    status = _status(c)
    note = _failed_names(c)
    if status == PASS and cons.indeterminate:
        status, note = DEGRADED, "constructibility search ran out of budget"
    return CriterionResult("A3", status, c, note=note)


def census_checks(cfg: VerifyConfig) -> CriterionResult:
    from .enumerate import census_containment, closed_3manifolds_oracle, enumerate_closed_3manifolds, write_census

    c: dict[str, object] = {}
    census8 = None
    for n, want in ((5, 1), (6, 2), (7, 5), (8, 39)):
        recs = list(enumerate_closed_3manifolds(n))
        c[f"n{n}_count"] = len(recs) == want
        if n <= 7:
            c[f"n{n}_oracle"] = sorted(r.facets for r in recs) == closed_3manifolds_oracle(n)
        if n == 8:
            census8 = recs
    hits = census_containment(census8, cp.dunce_hat_D())
    c["three_hits"] = sorted(len(r.facets) for r in hits) == [19, 20, 20]
    nineteen = [r for r in hits if len(r.facets) == 19]
    c["hit19_is_gs_32"] = len(nineteen) == 1 and are_isomorphic(nineteen[0].complex, cp.gs_32()) is not None
    if cfg.out is not None:
        for r in census8:
            r.flags["contains_dunce_hat"] = r in hits
        write_census(Path(cfg.out) / "census_8", census8)
    return CriterionResult("A4", _status(c), c, note=_failed_names(c))


def ball_search_checks(cfg: VerifyConfig) -> CriterionResult:
    from .enumerate import search_balls_containing

    D = cp.dunce_hat_D()
    r11 = search_balls_containing(D, 8, 11)
    r12 = search_balls_containing(D, 8, 12)
    c = {
        "none_below_12": r11.verdict is Verdict.YES and r11.balls == [],
        "unique_at_12": r12.verdict is Verdict.YES and len(r12.balls) == 1,
        "is_ball_B": len(r12.balls) == 1 and are_isomorphic(r12.balls[0].complex, cp.ball_B()) is not None,
    }
    return CriterionResult("A5", _status(c), c, note=_failed_names(c))


def tree_checks(cfg: VerifyConfig) -> CriterionResult:
    from .trees import facet_independence_experiment, find_tree_avoiding, spanning_trees, tree_complex

    S = cp.gs_32()
    D = cp.dunce_hat_D()
    trees = list(spanning_trees(S, "sample", samples=cfg.tree_samples, seed=cfg.seed))
    kts = [tree_complex(S, T) for T in trees]
    report = facet_independence_experiment(S, cfg.exhaustive_budget)
    avoid = find_tree_avoiding(S, D.facets)
    core_is_D = False
    if avoid is not None:
        KT = tree_complex(S, avoid)
        cores, status = find_stuck_cores(KT, "exhaustive", budget=cfg.exhaustive_budget)
        core_is_D = status is Verdict.YES and any(are_isomorphic(k.complex, D) is not None for k in cores)
    c = {
        "twenty_triangles": all(len(K.faces_of_dim(2)) == 20 for K in kts),
        "independence_19_yes": len(report.verdicts) == 19 and all(v is Verdict.YES for v in report.verdicts),
        "some_tree_collapsible": any(collapse_to_point(K, budget=cfg.exhaustive_budget).yes for K in kts),
        "avoiding_tree_reaches_D": core_is_D,
    }
    return CriterionResult("A6", _status(c), c, note=_failed_names(c))


def product_checks(cfg: VerifyConfig) -> CriterionResult:
    D = cp.dunce_hat_D()
    P = product_with_interval(D, D.vertices)
    to_point = collapse_to_point(P, "greedy", seed=cfg.seed, budget=cfg.restarts)
    onto = collapses_onto(P, bottom_copy(D, D.vertices), "greedy", seed=cfg.seed, budget=cfg.restarts)

    def valid(out, want):
        if not out.yes:
            return False
        r = replay_certificate(P, out.witness)
        return r.valid and want(r.complex)

    c = {
        "shape": P.num_vertices == 16 and P.f_vector()[3] == 51,
        "collapses_to_point": valid(to_point, lambda K: len(K) == 1),
        "collapses_onto_D": valid(onto, lambda K: K == bottom_copy(D, D.vertices)),
    }
    status = _status(c)
    if status == FAIL and (to_point.indeterminate or onto.indeterminate):
        status = INDETERMINATE
    return CriterionResult("A7", status, c, note=_failed_names(c))


def geometry_checks(cfg: VerifyConfig) -> CriterionResult:
    from .formats import parse_off, serialize_coordinates
    from .geometry import (choose_base, export_off, extract_embedding, realize_search, schlegel,
                           verify_embedding, verify_schlegel, viewpoint_ok)

    S = cp.gs_32()
    real = realize_search(S, trials=cfg.realize_trials, seed=cfg.seed)
    c: dict[str, object] = {"realized": real is not None}
    if real is not None:
        base = choose_base(real.points, real.facets)
        proj = schlegel(real.points, real.facets, base)
        G = extract_embedding(proj, cp.dunce_hat_D().facets)
        off = export_off(G)
        pts, faces = parse_off(off)
        c.update({
            "viewpoint_signs": viewpoint_ok(real.points, real.facets, base, proj.viewpoint),
            "schlegel_valid": verify_schlegel(proj),
            "eighteen_cells": len(proj.tetrahedra) == 18,
            "embedding_valid": bool(verify_embedding(G)),
            "off_counts": len(pts) == 8 and len(faces) == 17,
        })
        if cfg.out is not None:
            out = Path(cfg.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / "gs_32_coordinates.txt").write_text(
                serialize_coordinates([real.points[v] for v in sorted(real.points)]))
            (out / "dunce_hat.off").write_text(off)
    return CriterionResult("A8", _status(c), c, note=_failed_names(c))


def random_2complex(rng: random.Random, max_vertices: int = 8, max_triangles: int = 15) -> SimplicialComplex:
    from itertools import combinations

    n = rng.randint(3, max_vertices)
    tris = list(combinations(range(n), 3))
    k = rng.randint(1, min(max_triangles, len(tris)))
    return SimplicialComplex.from_facets(rng.sample(tris, k))


def _random_collapse_sequence(K: SimplicialComplex, rng: random.Random) -> CollapseCertificate:
    idx = FaceIndex(K)
    pairs, _ = _greedy_run(idx, idx.full, rng, prefer_top=False)
    pairs = pairs[: rng.randint(0, len(pairs))]
    return CollapseCertificate(tuple(idx.step(i, j) for i, j in pairs))


def _reduced_betti(K, length: int = 4) -> tuple[int, ...]:
    b = homology_z2(K, reduced=True)
    return b + (0,) * (length - len(b))


def property_checks(cfg: VerifyConfig) -> CriterionResult:
    from .enumerate import shellable_ball_levels
    from .shelling import collapse_start, is_shellable, shelling_to_collapse

    rng = random.Random(cfg.seed)
    # (i) shellings of corpus and generated balls turn into valid collapses
    balls = [cp.ball_B(), cp.gs_32(), SimplicialComplex.simplex(3)]
    pool = []
    for k, level in shellable_ball_levels(7, 9):
        pool.extend(SimplicialComplex.from_masks(b.facets) for b in level)
    balls += rng.sample(pool, min(len(pool), 60))
    ok_i = True
    for K in balls:
        sh = is_shellable(K)
        cert = shelling_to_collapse(K, sh.witness)
        r = replay_certificate(collapse_start(K, sh.witness), cert)
        ok_i &= sh.yes and r.valid and len(r.complex) == 1
    # (ii) greedy decides collapsibility in dimension two
    ok_ii = all(greedy_equals_search_dim2(random_2complex(rng)) for _ in range(2 * cfg.property_samples))
    # (iii) collapses preserve Euler characteristic and reduced Betti numbers
    ok_iii = True
    sources = [cp.ball_B(), cp.dunce_hat_D(), cp.rp2_6(), cp.gs_32().skeleton(2)]
    for t in range(cfg.property_samples):
        K = sources[t % len(sources)] if t % 2 else random_2complex(rng)
        cert = _random_collapse_sequence(K, rng)
        H = K
        for step in cert:
            H2 = elementary_collapse(H, step)
            ok_iii &= H2.euler_characteristic() == H.euler_characteristic()
            H = H2
        ok_iii &= _reduced_betti(H) == _reduced_betti(K)
    # (iv) canonical form is a relabeling invariant
    ok_iv = True
    for name in ("gs_32", "ball_B", "dunce_hat_D", "rp2_6", "simplex_3", "simplex_boundary_4"):
        K = cp.corpus(name)
        form = canonical_form(K)[0]
        vs = list(K.vertices)
        for _ in range(cfg.property_samples):
            img = rng.sample(range(max(vs) + 8), len(vs))
            ok_iv &= canonical_form(K.relabel(dict(zip(vs, img))))[0] == form
    # (v) normalizing a certificate keeps its endpoints
    ok_v = True
    for t in range(cfg.property_samples):
        K = sources[t % len(sources)]
        cert = _random_collapse_sequence(K, rng)
        norm = normalize_certificate(K, cert)
        ok_v &= replay_certificate(K, norm).complex == replay_certificate(K, cert).complex
    c = {"shelling_to_collapse": ok_i, "greedy_dim2": ok_ii, "collapse_invariants": ok_iii,
         "canonical_invariance": ok_iv, "normalize_endpoints": ok_v}
    return CriterionResult("A9", _status(c), c, note=_failed_names(c))


def ball_census_checks(cfg: VerifyConfig) -> CriterionResult:
    from .enumerate import enumerate_balls

    res = enumerate_balls(8, budget=None)
    c = {"count_10211": res.verdict is Verdict.YES and len(res.balls) == 10211}
    return CriterionResult("A10", _status(c), c, note=f"found {len(res.balls)}")


CRITERIA: dict[str, Callable[[VerifyConfig], CriterionResult]] = {
    "A1": sphere_checks,
    "A2": ball_checks,
    "A3": dunce_hat_checks,
    "A4": census_checks,
    "A5": ball_search_checks,
    "A6": tree_checks,
    "A7": product_checks,
    "A8": geometry_checks,
    "A9": property_checks,
    "A10": ball_census_checks,
}

TIERS = {
    "quick": ["A1", "A2", "A3", "A6", "A9"],
    "default": ["A1", "A2", "A3", "A4", "A6", "A7", "A8", "A9"],
    "full": ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10"],
}


def run_criteria(keys, cfg: VerifyConfig | None = None, echo: Callable[[str], None] | None = None):
    cfg = cfg or VerifyConfig()
    results = []
    for key in keys:
        res = _timed(key, CRITERIA[key], cfg)
        results.append(res)
        if echo:
            echo(res.line())
    return results


def write_report(results: list[CriterionResult], out: Path) -> Path:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["# criterion\tstatus\tseconds\tcheck\tvalue"]
    for r in results:
        for name, value in r.checks.items():
            lines.append(f"{r.key}\t{r.status}\t{r.seconds:.3f}\t{name}\t{value}")
    path = out / "report.tsv"
    path.write_text("\n".join(lines) + "\n")
    return path
