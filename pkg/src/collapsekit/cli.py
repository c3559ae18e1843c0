"""Command-line entry point.

Exit codes: 0 yes/pass, 1 no/fail, 2 indeterminate, 3 usage error.
Witness files (certificates, shelling orders, stuck cores) go to
``--witness`` or, by default, into the current directory as
``<input stem>.<command>.txt``.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus as cp
from .complex import SimplicialComplex, classify_small_manifold
from .formats import (ParseError, parse_coordinates, read_complex, serialize_certificate,
                      serialize_coordinates, serialize_facets, serialize_shelling, serialize_tree,
                      write_complex)
from .search import Verdict

EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def load(spec: str) -> SimplicialComplex:
    """A facet-list file path, or the name of a built-in complex."""
    p = Path(spec)
    if p.exists():
        return read_complex(p)
    try:
        return cp.corpus(spec)
    except KeyError as e:
        raise UsageError(f"{spec}: no such file or corpus entry ({e.args[0]})") from None


def _stem(spec: str) -> str:
    return Path(spec).stem


def _witness_path(args, suffix: str) -> Path:
    if getattr(args, "witness", None):
        return Path(args.witness)
    return Path(f"{_stem(args.complex)}.{suffix}.txt")


def _say(verdict: Verdict, extra: str = "") -> int:
    print(verdict.value + (f"  {extra}" if extra else ""))
    return verdict.exit_code


def _stats(stats: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in stats.items())


# -- subcommands ------------------------------------------------------------------

def cmd_info(args) -> int:
    K = load(args.complex)
    print(f"facets      {len(K.facets)}")
    print(f"dimension   {K.dim}")
    print(f"f-vector    {K.f_vector()}")
    print(f"euler       {K.euler_characteristic()}")
    print(f"pure        {K.is_pure()}")
    print(f"type        {classify_small_manifold(K).value}")
    print(f"hash        {K.content_hash()}")
    return 0


def cmd_collapse(args) -> int:
    from .collapse import collapse_to_point, collapses_onto, replay_certificate

    K = load(args.complex)
    strategy = "exhaustive" if args.deterministic else args.strategy
    if args.onto:
        H = load(args.onto)
        out = collapses_onto(K, H, strategy, seed=args.seed, budget=args.budget)
    else:
        out = collapse_to_point(K, strategy, seed=args.seed, budget=args.budget)
    if out.yes:
        end = replay_certificate(K, out.witness).complex
        path = _witness_path(args, "cert")
        path.write_text(serialize_certificate(out.witness, K.content_hash(), end.content_hash()))
        return _say(out.verdict, f"certificate {path} ({len(out.witness)} steps)")
    return _say(out.verdict, _stats(out.stats))


def cmd_extendable_collapse(args) -> int:
    from .collapse import is_extendably_collapsible

    K = load(args.complex)
    out = is_extendably_collapsible(K, budget=args.budget, seed=args.seed)
    if out.no:
        core = out.witness.complex
        path = _witness_path(args, "stuck")
        path.write_text(serialize_certificate(out.witness.certificate, K.content_hash(), core.content_hash()))
        core_path = path.with_suffix(".core.txt")
        write_complex(core_path, core)
        return _say(out.verdict, f"stuck core {core_path} f-vector {core.f_vector()}, certificate {path}")
    return _say(out.verdict)


def cmd_shell(args) -> int:
    from .shelling import is_extendably_shellable, is_shellable

    K = load(args.complex)
    if args.extendable:
        out = is_extendably_shellable(K, args.budget)
        if out.no and out.witness is not None:
            path = _witness_path(args, "stuck-shelling")
            path.write_text(serialize_shelling(out.witness, K.content_hash()))
            return _say(out.verdict, f"stuck partial shelling {path}")
        return _say(out.verdict)
    out = is_shellable(K, args.budget)
    if out.yes:
        path = _witness_path(args, "shelling")
        path.write_text(serialize_shelling(out.witness, K.content_hash()))
        return _say(out.verdict, f"shelling {path}")
    return _say(out.verdict)


def cmd_constructible(args) -> int:
    from .shelling import is_constructible

    out = is_constructible(load(args.complex), args.budget)
    return _say(out.verdict, _stats(out.stats))


def cmd_homology(args) -> int:
    from .homology import homology_integral, homology_z2

    K = load(args.complex)
    if args.z2:
        print("z2 betti", homology_z2(K, reduced=not args.unreduced))
        return 0
    h = homology_integral(K, reduced=not args.unreduced)
    for d, (b, t) in enumerate(zip(h.betti, h.torsion)):
        parts = ([f"Z^{b}" if b > 1 else "Z"] if b else []) + [f"Z/{x}" for x in t]
        print(f"H{d} = {' + '.join(parts) or '0'}")
    return 0


def cmd_cm(args) -> int:
    from .homology import is_cohen_macaulay

    return _say(Verdict.YES if is_cohen_macaulay(load(args.complex)) else Verdict.NO)


def cmd_iso(args) -> int:
    from .iso import are_isomorphic

    pi = are_isomorphic(load(args.complex), load(args.other))
    if pi is None:
        return _say(Verdict.NO)
    return _say(Verdict.YES, " ".join(f"{a}->{b}" for a, b in sorted(pi.items())))


def cmd_contains(args) -> int:
    from .iso import contains_subcomplex

    pi = contains_subcomplex(load(args.complex), load(args.pattern))
    if pi is None:
        return _say(Verdict.NO)
    return _say(Verdict.YES, " ".join(f"{a}->{b}" for a, b in sorted(pi.items())))


def cmd_enumerate(args) -> int:
    from .enumerate import census_containment, enumerate_closed_3manifolds, write_census

    recs = list(enumerate_closed_3manifolds(args.n))
    if args.pattern:
        hits = census_containment(recs, load(args.pattern))
        for r in recs:
            r.flags["contains_pattern"] = r in hits
        print(f"{len(hits)} of {len(recs)} contain the pattern")
    if args.out:
        index = write_census(Path(args.out), recs)
        print(f"index {index}")
    print(f"{len(recs)} types")
    return 0


def cmd_search_balls(args) -> int:
    from .enumerate import search_balls_containing, write_census

    res = search_balls_containing(load(args.pattern), args.n, args.max_facets, args.budget)
    print("classes per level", res.levels)
    for r in res.balls:
        print(r.f_vector, serialize_facets(r.facets).strip().replace("\n", " | "))
    if args.out:
        print(f"index {write_census(Path(args.out), res.balls)}")
    if res.verdict is Verdict.INDETERMINATE:
        return _say(res.verdict, f"{len(res.balls)} found before the budget ran out")
    return _say(Verdict.YES if res.balls else Verdict.NO, f"{len(res.balls)} classes")


def cmd_tree_collapse(args) -> int:
    from .collapse import collapse_to_point, replay_certificate
    from .trees import find_tree_avoiding, spanning_trees, tree_complex, tree_directed_collapse

    M = load(args.complex)
    if args.avoid:
        T = find_tree_avoiding(M, load(args.avoid).facets)
        if T is None:
            return _say(Verdict.NO, "no spanning tree avoids the given triangles")
    else:
        T = next(spanning_trees(M, "sample", samples=1, seed=args.seed))
    facet = tuple(args.facet) if args.facet else M.facets[0]
    cert = tree_directed_collapse(M, facet, T)
    start = M.delete_open_facets([facet])
    KT = tree_complex(M, T)
    assert replay_certificate(start, cert).complex == KT
    path = _witness_path(args, "tree")
    path.write_text(serialize_tree(T.ridges))
    cert_path = path.with_suffix(".cert.txt")
    cert_path.write_text(serialize_certificate(cert, start.content_hash(), KT.content_hash()))
    out = collapse_to_point(KT, budget=args.budget)
    print(f"tree {path}, certificate {cert_path}, K^T f-vector {KT.f_vector()}")
    return _say(out.verdict, "K^T collapsible" if out.yes else "K^T not collapsible" if out.no else "")


def cmd_realize(args) -> int:
    from .geometry import realize_search

    K = load(args.complex)
    real = realize_search(K, trials=args.trials, seed=args.seed, sampler=args.sampler)
    if real is None:
        return _say(Verdict.INDETERMINATE, "no realization within the trial budget")
    path = Path(args.out) if args.out else Path(f"{_stem(args.complex)}.coords.txt")
    path.write_text(serialize_coordinates([real.points[v] for v in sorted(real.points)]))
    return _say(Verdict.YES, f"trial {real.trial}, coordinates {path}")


def cmd_schlegel(args) -> int:
    from .geometry import (brute_force_facets, choose_base, export_off, extract_embedding, schlegel,
                           verify_embedding, verify_schlegel)

    pts = parse_coordinates(Path(args.coords).read_text())
    points = dict(enumerate(pts))
    facets = brute_force_facets(pts)
    base = tuple(args.base) if args.base else choose_base(points, facets)
    proj = schlegel(points, facets, base)
    ok = verify_schlegel(proj)
    print(f"base {base}, {len(proj.tetrahedra)} cells, valid {ok}")
    if not ok:
        return 1
    if args.pattern:
        G = extract_embedding(proj, load(args.pattern).facets)
        check = verify_embedding(G)
        print(f"embedding valid {check.ok}" + (f", bad pair {check.pair}" if check.pair else ""))
        if args.off:
            Path(args.off).write_text(export_off(G, args.digits))
            print(f"off {args.off}")
        return 0 if check else 1
    return 0


def cmd_corpus(args) -> int:
    if args.list:
        print("\n".join(cp.available()))
        return 0
    if args.write_data:
        for p in cp.write_data_files(Path(args.write_data)):
            print(p)
        return 0
    if not args.name:
        raise UsageError("corpus needs a name, --list or --write-data")
    K = cp.corpus(args.name) if args.name != "derive_dunce_hat" else cp.derive_dunce_hat(args.budget)
    text = serialize_facets(K.facets)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify_paper(args) -> int:
    from .verify import FAIL, INDETERMINATE, TIERS, VerifyConfig, run_criteria, write_report

    tier = "quick" if args.quick else "full" if args.full else "default"
    keys = args.only or TIERS[tier]
    cfg = VerifyConfig(seed=args.seed, out=Path(args.out) if args.out else None)
    if args.budget:
        cfg.exhaustive_budget = args.budget
    results = run_criteria(keys, cfg, echo=print)
    if args.out:
        print(f"report {write_report(results, Path(args.out))}")
    statuses = {r.status for r in results}
    if FAIL in statuses:
        return 1
    if INDETERMINATE in statuses:
        return 2
    return 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="collapsekit", description="Collapsibility, shellability and small-census workbench.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help, complex_arg=True):
        s = sub.add_parser(name, help=help)
        if complex_arg:
            s.add_argument("complex", help="facet-list file or corpus name")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--budget", type=int, default=None, help="search nodes (or restarts for greedy)")
        s.add_argument("--deterministic", action="store_true", help="use the exhaustive single-order search")
        s.add_argument("--jobs", type=int, default=1, help="worker cap (searches run in-process)")
        s.set_defaults(func=fn)
        return s

    s = add("info", cmd_info, "f-vector, Euler characteristic, manifold type")
    s = add("collapse", cmd_collapse, "collapse to a point or onto a subcomplex")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--to-point", action="store_true", default=True)
    g.add_argument("--onto", help="subcomplex (same labels)")
    s.add_argument("--strategy", choices=["exhaustive", "greedy"], default="exhaustive")
    s.add_argument("--witness")
    s = add("extendable-collapse", cmd_extendable_collapse, "look for a stuck collapse sequence")
    s.add_argument("--witness")
    s = add("shell", cmd_shell, "find a shelling order")
    s.add_argument("--extendable", action="store_true")
    s.add_argument("--witness")
    add("constructible", cmd_constructible, "decide constructibility")
    s = add("homology", cmd_homology, "reduced homology over Z (or Z/2)")
    s.add_argument("--z2", action="store_true")
    s.add_argument("--unreduced", action="store_true")
    add("cm", cmd_cm, "Cohen-Macaulay test (Reisner)")
    s = add("iso", cmd_iso, "isomorphism test")
    s.add_argument("other")
    s = add("contains", cmd_contains, "find a copy of a pattern inside a complex")
    s.add_argument("pattern")
    s = add("enumerate", cmd_enumerate, "closed 3-manifolds on n vertices", complex_arg=False)
    s.add_argument("n", type=int)
    s.add_argument("--pattern")
    s.add_argument("--out")
    s = add("search-balls", cmd_search_balls, "3-balls containing a pattern", complex_arg=False)
    s.add_argument("pattern")
    s.add_argument("n", type=int)
    s.add_argument("max_facets", type=int)
    s.add_argument("--out")
    s = add("tree-collapse", cmd_tree_collapse, "collapse M minus a facet along a dual spanning tree")
    s.add_argument("--facet", type=int, nargs="+")
    s.add_argument("--avoid", help="complex whose triangles the tree must not cross")
    s.add_argument("--witness")
    s = add("realize", cmd_realize, "random search for a polytopal realization")
    s.add_argument("--trials", type=int, default=10**6)
    s.add_argument("--sampler", choices=["box", "sphere"], default="box")
    s.add_argument("--out")
    s = add("schlegel", cmd_schlegel, "Schlegel diagram from a coordinates file", complex_arg=False)
    s.add_argument("coords")
    s.add_argument("--base", type=int, nargs=4)
    s.add_argument("--pattern", help="2-complex to extract and check for embedding")
    s.add_argument("--off")
    s.add_argument("--digits", type=int, default=6)
    s = add("corpus", cmd_corpus, "print or write built-in complexes", complex_arg=False)
    s.add_argument("name", nargs="?")
    s.add_argument("--list", action="store_true")
    s.add_argument("--write-data", metavar="DIR")
    s.add_argument("--out")
    s = add("verify-paper", cmd_verify_paper, "run the acceptance checks", complex_arg=False)
    t = s.add_mutually_exclusive_group()
    t.add_argument("--quick", action="store_true")
    t.add_argument("--full", action="store_true")
    s.add_argument("--only", nargs="+", help="criterion keys, e.g. A1 A4")
    s.add_argument("--out")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help exits 0, parse errors exit with EXIT_USAGE
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ParseError, FileNotFoundError, KeyError, ValueError) as e:
        print(f"collapsekit {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
