"""Count shellable 3-balls on n vertices, printing class counts level by level.

    python3 scripts/ball_census.py 8 --out results/balls_8.tsv
"""
import argparse
import time
from math import comb

from collapsekit.enumerate import shellable_ball_levels


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("n", type=int)
    ap.add_argument("--max-facets", type=int)
    ap.add_argument("--out", help="tab-separated per-level counts")
    args = ap.parse_args()

    max_facets = args.max_facets or comb(args.n, 4)
    t0 = time.perf_counter()
    total = 0
    rows = []
    for k, level in shellable_ball_levels(args.n, max_facets):
        full = sum(1 for b in level if b.nverts == args.n)
        total += full
        rows.append((k, len(level), full))
        print(f"{k:3d} tetrahedra  {len(level):7d} classes  {full:6d} on {args.n} vertices  "
              f"total {total}  {time.perf_counter() - t0:8.1f}s", flush=True)
    print(f"{total} balls on {args.n} vertices")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("tetrahedra\tclasses\tfull_vertex_classes\n")
            fh.writelines(f"{k}\t{a}\t{b}\n" for k, a, b in rows)


if __name__ == "__main__":
    main()
